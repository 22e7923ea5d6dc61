#include "redundancy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "numeric_util.hpp"
#include "redundancy/birthday.hpp"
#include "redundancy/errors.hpp"
#include "redundancy/order_stats.hpp"

namespace redundancy {

namespace {

void check_nk(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw InvalidArgument("need 1 <= k <= n (n=" + std::to_string(n) + ", k=" +
                              std::to_string(k) + ")");
}

double ratio(int n, int k) { return static_cast<double>(n) / k; }

bool same_value(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Index of the minimum, preferring the later (larger-k) entry among ties.
template <class F>
int argmin_k(const std::vector<int>& ks, F&& value, double tol) {
    int best = ks.front();
    double best_v = value(best);
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const double v = value(ks[i]);
        if (v < best_v || same_value(v, best_v, tol)) {
            if (v < best_v) best_v = v;
            best = ks[i];
        }
    }
    return best;
}

std::vector<int> one_to(int n) {
    std::vector<int> ks(n);
    for (int i = 0; i < n; ++i) ks[i] = i + 1;
    return ks;
}

double sexp_additive_time(int n, int k, double delta, double w) {
    const int s = n / k;
    if (w == 0.0) return s * delta;
    if (k == 1) return replication_additive_sexp_mean(n, delta, w);
    if (s == 1) return delta + exp_order_mean(n, k, w);
    try {
        return s * delta + erlang_order_mean(n, k, s, w);
    } catch (const NumericalRangeError&) {
        return s * delta + erlang_order_mean_quadrature(n, k, s, w);
    }
}

}  // namespace

double sexp_server_time(int n, int k, double delta, double w) {
    check_nk(n, k);
    if (w == 0.0) return delta;
    return delta + ratio(n, k) * exp_order_mean(n, k, w);
}

double sexp_data_time(int n, int k, double delta, double w) {
    check_nk(n, k);
    return ratio(n, k) * delta + exp_order_mean(n, k, w);
}

double pareto_server_time(int n, int k, double lambda, double alpha) {
    check_nk(n, k);
    return ratio(n, k) * pareto_order_mean(n, k, lambda, alpha);
}

double pareto_data_time(int n, int k, double shift, double lambda, double alpha) {
    check_nk(n, k);
    return ratio(n, k) * shift + pareto_order_mean(n, k, lambda, alpha);
}

double bimodal_server_time(int n, int k, double b, double eps) {
    check_nk(n, k);
    return ratio(n, k) * bimodal_order_mean(n, k, b, eps);
}

double bimodal_data_time(int n, int k, double shift, double b, double eps) {
    check_nk(n, k);
    return ratio(n, k) * shift + bimodal_order_mean(n, k, b, eps);
}

double expected_time(const ServiceModel& model, const JobConfig& job) {
    const int n = job.n(), k = job.k(), s = job.s();
    const double shift = model.shift.value_or(0.0);
    return std::visit(
        overloaded{
            [&](const ShiftedExp& d) {
                switch (model.scaling) {
                    case ScalingModel::Server: return sexp_server_time(n, k, d.delta, d.w);
                    case ScalingModel::Data: return sexp_data_time(n, k, d.delta, d.w);
                    case ScalingModel::Additive: break;
                }
                return sexp_additive_time(n, k, d.delta, d.w);
            },
            [&](const Pareto& d) {
                switch (model.scaling) {
                    case ScalingModel::Server: return pareto_server_time(n, k, d.lambda, d.alpha);
                    case ScalingModel::Data:
                        return pareto_data_time(n, k, shift, d.lambda, d.alpha);
                    case ScalingModel::Additive: break;
                }
                if (k != n)
                    throw NoClosedForm("pareto with additive scaling has no closed form for k=" +
                                       std::to_string(k) + " < n=" + std::to_string(n) +
                                       "; use monte carlo");
                return pareto_order_mean(n, n, d.lambda, d.alpha);
            },
            [&](const BiModal& d) {
                switch (model.scaling) {
                    case ScalingModel::Server: return bimodal_server_time(n, k, d.b, d.eps);
                    case ScalingModel::Data: return bimodal_data_time(n, k, shift, d.b, d.eps);
                    case ScalingModel::Additive: break;
                }
                return bimodal_sum_order_mean(n, k, s, d.b, d.eps);
            },
        },
        model.dist);
}

// ---------------------------------------------------------------------------

namespace {

void fill_mc(SweepRow& row, const ServiceModel& model, const JobConfig& job, const MonteCarlo& mc,
             const McOptions& options) {
    const McEstimate e = estimate(model, job, mc.trials, mc.seed, options);
    row.expected_time = e.mean;
    row.std_error = e.std_error;
    row.std_error_unreliable = e.std_error_unreliable;
    if (e.std_error_unreliable) row.quantiles = SweepRow::Quantiles{e.q05, e.median, e.q95};
    row.method = "mc";
}

void fill_lln(SweepRow& row, const ServiceModel& model) {
    const auto* bm = std::get_if<BiModal>(&model.dist);
    if (!bm || model.scaling == ScalingModel::Additive)
        throw NoClosedForm("the LLN approximation covers bimodal with server or data scaling only");
    const LlnValue v = bimodal_lln(model.scaling, row.rate, bm->b, bm->eps, model.shift);
    row.expected_time = v.value;
    row.lln_boundary = v.at_boundary;
    row.method = "lln";
}

}  // namespace

SweepResult sweep(const ServiceModel& model, int n, const EvalMethod& method,
                  const SweepOptions& options) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    SweepResult result{n, {}, std::nullopt, {}, std::nullopt};

    for (int k : divisors(n)) {
        const JobConfig job(n, k);
        SweepRow row{};
        row.k = k;
        row.s = job.s();
        row.rate = job.rate();
        row.method = "unavailable";
        try {
            std::visit(overloaded{
                           [&](const Analytic&) {
                               try {
                                   row.expected_time = expected_time(model, job);
                                   row.method = "analytic";
                               } catch (const NoClosedForm&) {
                                   if (!options.fallback) throw;
                                   fill_mc(row, model, job, *options.fallback, options.mc);
                               } catch (const NumericalRangeError&) {
                                   if (!options.fallback) throw;
                                   fill_mc(row, model, job, *options.fallback, options.mc);
                               }
                           },
                           [&](const MonteCarlo& mc) { fill_mc(row, model, job, mc, options.mc); },
                           [&](const Lln&) { fill_lln(row, model); },
                       },
                       method);
        } catch (const NoClosedForm& e) {
            row.method_unavailable = true;
            row.note = e.what();
        } catch (const NumericalRangeError& e) {
            row.method_unavailable = true;
            row.note = e.what();
        } catch (const Error& e) {
            row.note = e.what();
        }
        result.rows.push_back(std::move(row));
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : result.rows)
        if (row.expected_time && *row.expected_time < best) best = *row.expected_time;
    if (!std::isfinite(best)) return result;

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& v = result.rows[i].expected_time;
        if (v && same_value(*v, best, options.tie_tolerance)) {
            result.tied_k.push_back(result.rows[i].k);
            result.best = i;  // rows ascend in k, so the last tie wins
        }
    }
    result.rows[*result.best].is_optimal = true;
    result.strategy = classify(n, result.rows[*result.best].k);
    return result;
}

// ---------------------------------------------------------------------------

OptimalK optimal_k_sexp_data(int n, double delta, double w) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (w == 0.0) {
        return {static_cast<double>(n), n, n, true,
                "deterministic service (w = 0): every k costs the same per unit, splitting chosen"};
    }
    const double d = delta / w;
    OptimalK out{};
    out.continuous = n * (-d / 2.0 + std::sqrt(d + d * d / 4.0));
    auto time = [&](int k) { return sexp_data_time(n, k, delta, w); };
    out.best_divisor = argmin_k(divisors(n), time, 1e-12);
    out.best_integer = argmin_k(one_to(n), time, 1e-12);
    return out;
}

OptimalK optimal_k_pareto_server(int n, double alpha) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (!(alpha > 1.0)) throw MomentDoesNotExist("pareto server optimum requires alpha > 1");
    OptimalK out{};
    out.continuous = (alpha * n - 1.0) / (alpha + 1.0);
    // The optimum does not depend on lambda.
    auto time = [&](int k) { return pareto_server_time(n, k, 1.0, alpha); };
    out.best_divisor = argmin_k(divisors(n), time, 1e-12);
    out.best_integer = argmin_k(one_to(n), time, 1e-12);
    return out;
}

double pareto_data_approx(int n, int k, double delta, double lambda, double alpha) {
    check_nk(n, k);
    if (k == n) throw DomainError("the gamma-ratio approximation degenerates at k = n");
    if (!(alpha > 1.0)) throw MomentDoesNotExist("pareto approximation requires alpha > 1");
    return ratio(n, k) * delta + lambda * std::pow(static_cast<double>(n) / (n - k), 1.0 / alpha);
}

// ---------------------------------------------------------------------------

LlnValue bimodal_lln(ScalingModel scaling, double r, double b, double eps,
                     std::optional<double> shift) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("code rate must lie in (0, 1]");
    const BiModal dist(b, eps);
    const double fast = 1.0 - dist.eps;
    const bool boundary = std::abs(fast - r) <= 1e-12;
    const double p = boundary ? 0.5 : (fast > r ? 1.0 : 0.0);
    const double q = 1.0 - p;
    switch (scaling) {
        case ScalingModel::Server:
            return {p / r + dist.b * q / r, boundary};
        case ScalingModel::Data:
            if (!shift) throw InvalidArgument("data-dependent LLN needs a shift");
            return {*shift / r + p + dist.b * q, boundary};
        case ScalingModel::Additive:
            break;
    }
    throw InvalidArgument("the LLN approximation covers server and data scaling only");
}

double bimodal_lln_threshold(ScalingModel scaling, double b, std::optional<double> shift) {
    if (!(b > 1.0)) throw InvalidArgument("threshold needs b > 1");
    switch (scaling) {
        case ScalingModel::Server:
            return (b - 1.0) / b;
        case ScalingModel::Data:
            if (!shift) throw InvalidArgument("data-dependent threshold needs a shift");
            return (b - 1.0) / (*shift + b - 1.0);
        case ScalingModel::Additive:
            break;
    }
    throw InvalidArgument("thresholds exist for server and data scaling only");
}

LowerBound pareto_replication_lower_bound(int n, double lambda, double alpha, double eta) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (!(eta > 0.0)) throw InvalidArgument("eta must be > 0");
    const Pareto dist(lambda, alpha);
    const double m = mean(dist);
    const double xi = moment(dist, 4);  // throws when alpha <= 4
    const double nn = n;
    const double bracket = 1.0 - 21.0 * xi / (nn * nn * std::pow(eta, 4));
    if (bracket <= 0.0) return {0.0, true};
    return {nn * (m - eta) * std::exp(nn * std::log(bracket)), false};
}

// ---------------------------------------------------------------------------

namespace {

std::string verdict(double split, double repl) {
    if (same_value(split, repl, 1e-12)) return "tie";
    return split < repl ? "splitting" : "replication";
}

double sexp_replication(int n, const ShiftedExp& d) {
    if (d.w == 0.0) return n * d.delta;
    return replication_additive_sexp_mean(n, d.delta, d.w);
}

double sexp_splitting(int n, const ShiftedExp& d) { return d.delta + exp_order_mean(n, n, d.w); }

}  // namespace

SplitVsReplication splitting_vs_replication_report(const ServiceDistribution& dist, int n,
                                                   const SplitVsReplicationOptions& options) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    SplitVsReplication out{};
    out.n = n;
    std::visit(
        overloaded{
            [&](const ShiftedExp& d) {
                out.splitting = sexp_splitting(n, d);
                out.replication = sexp_replication(n, d);
                out.replication_method = "analytic";
                out.verdict = verdict(out.splitting, out.replication);
                // Smallest n0 such that splitting wins at every scanned n >= n0.
                std::optional<int> from;
                for (int m = 1; m <= options.scan_max; ++m) {
                    const bool wins =
                        verdict(sexp_splitting(m, d), sexp_replication(m, d)) == "splitting";
                    if (wins && !from) from = m;
                    if (!wins) from.reset();
                }
                out.splitting_wins_from = from;
            },
            [&](const Pareto& d) {
                out.splitting = pareto_order_mean(n, n, d.lambda, d.alpha);
                if (n == 1) {
                    out.replication = out.splitting;
                    out.replication_method = "analytic";
                } else {
                    const ServiceModel model(d, ScalingModel::Additive);
                    const McEstimate e =
                        estimate(model, JobConfig(n, 1), options.trials, options.seed, options.mc);
                    out.replication = e.mean;
                    out.replication_std_error = e.std_error;
                    out.replication_method = "mc";
                }
                if (d.alpha > 4.0)
                    out.replication_lower_bound =
                        pareto_replication_lower_bound(n, d.lambda, d.alpha, options.eta);
                const auto& lb = out.replication_lower_bound;
                if (lb && !lb->vacuous && lb->value > out.splitting)
                    out.verdict = "splitting";
                else
                    out.verdict = verdict(out.splitting, out.replication);
            },
            [&](const BiModal& d) {
                out.splitting = bimodal_order_mean(n, n, d.b, d.eps);
                out.replication = bimodal_sum_order_mean(n, 1, n, d.b, d.eps);
                out.replication_method = "analytic";
                out.verdict = verdict(out.splitting, out.replication);
            },
        },
        dist);
    return out;
}

}  // namespace redundancy
