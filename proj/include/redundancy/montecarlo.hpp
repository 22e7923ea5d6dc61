#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "redundancy/job.hpp"
#include "redundancy/scaling.hpp"

namespace redundancy {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2020ULL;
inline constexpr std::size_t kDefaultTrials = 100000;

struct McOptions {
    /// Worker threads; 0 means REDUNDANCY_THREADS, else hardware concurrency.
    unsigned threads = 0;
};

/// Threads selected by REDUNDANCY_THREADS (>= 1), falling back to the hardware count.
unsigned configured_threads();

/// Trial i draws from RandomStream::for_trial(seed, i), so the returned vector
/// is identical for any thread count.
struct TrialPlan {
    std::uint64_t seed;
    std::size_t trials;

    RandomStream stream(std::size_t index) const { return RandomStream::for_trial(seed, index); }
};

/// Realizations of Y_{k:n}, one per trial, in trial order.
std::vector<double> simulate_job_times(const ServiceModel& model, const JobConfig& job,
                                       const TrialPlan& plan, const McOptions& options = {});

struct McEstimate {
    double mean;
    double std_error;  // sample standard deviation / sqrt(trials)
    std::size_t trials;
    std::uint64_t seed;
    // Pareto with alpha <= 2: the unit variance is infinite and std_error is not trustworthy.
    bool std_error_unreliable = false;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
};

/// Mean, standard error and quantiles of `samples` (pairwise-summed, order-deterministic).
McEstimate summarize(std::span<const double> samples, std::uint64_t seed, bool heavy_tail = false);

/// Monte Carlo E[Y_{k:n}]. Requires trials >= 100.
McEstimate estimate(const ServiceModel& model, const JobConfig& job, std::size_t trials,
                    std::uint64_t seed, const McOptions& options = {});

struct DominancePoint {
    double x;
    double tail_a;  // empirical P{Y_A > x}
    double tail_b;
    double band;    // sigmas * combined binomial standard error
};

struct DominanceReport {
    std::vector<DominancePoint> points;
    double max_violation = 0.0;  // max over the grid of tail_a - tail_b
    double max_excess = 0.0;     // max over the grid of tail_a - tail_b - band
    double worst_x = 0.0;
    bool violated = false;       // some max_excess > 0
};

/// Checks P_A{Y > x} <= P_B{Y > x} (B dominates A) on `grid` using the same
/// trial plan for both configurations. An empty grid selects 64 points spread
/// over the pooled sample range.
DominanceReport empirical_cdf_compare(const ServiceModel& model_a, const JobConfig& job_a,
                                      const ServiceModel& model_b, const JobConfig& job_b,
                                      std::size_t trials, std::uint64_t seed,
                                      std::vector<double> grid = {}, double sigmas = 3.0,
                                      const McOptions& options = {});

}  // namespace redundancy
