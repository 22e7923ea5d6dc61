#include "redundancy/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "numeric_util.hpp"
#include "redundancy/errors.hpp"

namespace redundancy {

unsigned configured_threads() {
    if (const char* env = std::getenv("REDUNDANCY_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1) return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_job_times(const ServiceModel& model, const JobConfig& job,
                                       const TrialPlan& plan, const McOptions& options) {
    const TaskModel task = model.task(job.s());
    const int n = job.n();
    const int k = job.k();
    std::vector<double> out(plan.trials);

    auto run = [&](std::size_t begin, std::size_t end) {
        std::vector<double> workers(static_cast<std::size_t>(n));
        for (std::size_t t = begin; t < end; ++t) {
            RandomStream rng = plan.stream(t);
            for (auto& y : workers) y = sample_task_time(task, rng);
            auto kth = workers.begin() + (k - 1);
            std::nth_element(workers.begin(), kth, workers.end());
            out[t] = *kth;
        }
    };

    const unsigned threads = options.threads ? options.threads : configured_threads();
    const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(plan.trials, 1));
    if (chunks <= 1) {
        run(0, plan.trials);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = plan.trials * c / chunks;
            const std::size_t end = plan.trials * (c + 1) / chunks;
            pool.emplace_back(run, begin, end);
        }
    }
    return out;
}

namespace {

double quantile_of(std::vector<double>& scratch, double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * (scratch.size() - 1)));
    std::nth_element(scratch.begin(), scratch.begin() + idx, scratch.end());
    return scratch[idx];
}

}  // namespace

McEstimate summarize(std::span<const double> samples, std::uint64_t seed, bool heavy_tail) {
    if (samples.size() < 2) throw InvalidArgument("at least two samples are needed");
    const double count = static_cast<double>(samples.size());
    const double mean = pairwise_sum(samples) / count;
    std::vector<double> scratch(samples.size());
    std::transform(samples.begin(), samples.end(), scratch.begin(),
                   [mean](double y) { return (y - mean) * (y - mean); });
    const double variance = pairwise_sum(scratch) / (count - 1.0);

    McEstimate est{mean, std::sqrt(variance / count), samples.size(), seed, heavy_tail};
    scratch.assign(samples.begin(), samples.end());
    est.median = quantile_of(scratch, 0.5);
    est.q05 = quantile_of(scratch, 0.05);
    est.q95 = quantile_of(scratch, 0.95);
    return est;
}

McEstimate estimate(const ServiceModel& model, const JobConfig& job, std::size_t trials,
                    std::uint64_t seed, const McOptions& options) {
    if (trials < 100) throw InvalidArgument("Monte Carlo estimate needs at least 100 trials");
    const auto samples = simulate_job_times(model, job, TrialPlan{seed, trials}, options);
    const auto* pareto = std::get_if<Pareto>(&model.dist);
    return summarize(samples, seed, pareto != nullptr && pareto->alpha <= 2.0);
}

DominanceReport empirical_cdf_compare(const ServiceModel& model_a, const JobConfig& job_a,
                                      const ServiceModel& model_b, const JobConfig& job_b,
                                      std::size_t trials, std::uint64_t seed,
                                      std::vector<double> grid, double sigmas,
                                      const McOptions& options) {
    if (trials < 100) throw InvalidArgument("dominance check needs at least 100 trials");
    const TrialPlan plan{seed, trials};
    auto a = simulate_job_times(model_a, job_a, plan, options);
    auto b = simulate_job_times(model_b, job_b, plan, options);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    if (grid.empty()) {
        const double lo = std::min(a.front(), b.front());
        const double hi = std::max(a.back(), b.back());
        constexpr int kPoints = 64;
        for (int i = 0; i < kPoints; ++i) grid.push_back(lo + (hi - lo) * i / (kPoints - 1));
    }

    const double count = static_cast<double>(trials);
    auto exceed = [count](const std::vector<double>& sorted, double x) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        return static_cast<double>(above) / count;
    };

    DominanceReport report;
    report.max_violation = -1.0;
    report.max_excess = -1.0;
    for (double x : grid) {
        const double pa = exceed(a, x);
        const double pb = exceed(b, x);
        const double band = sigmas * std::sqrt((pa * (1.0 - pa) + pb * (1.0 - pb)) / count);
        report.points.push_back({x, pa, pb, band});
        report.max_violation = std::max(report.max_violation, pa - pb);
        if (pa - pb - band > report.max_excess) {
            report.max_excess = pa - pb - band;
            report.worst_x = x;
        }
    }
    report.violated = report.max_excess > 0.0;
    return report;
}

}  // namespace redundancy
