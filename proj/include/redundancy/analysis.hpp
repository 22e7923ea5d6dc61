#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redundancy/job.hpp"
#include "redundancy/montecarlo.hpp"
#include "redundancy/scaling.hpp"

namespace redundancy {

// Closed forms for E[Y_{k:n}] in the non-additive cells. They accept any
// 1 <= k <= n (s = n/k need not be an integer) so that theorems stated over
// all k can be checked; the dispatcher below restricts to divisors.
double sexp_server_time(int n, int k, double delta, double w);
double sexp_data_time(int n, int k, double delta, double w);
double pareto_server_time(int n, int k, double lambda, double alpha);
double pareto_data_time(int n, int k, double shift, double lambda, double alpha);
double bimodal_server_time(int n, int k, double b, double eps);
double bimodal_data_time(int n, int k, double shift, double b, double eps);

/// Exact E[Y_{k:n}] for a service model and job. Throws NoClosedForm for
/// Pareto x Additive with k < n, MomentDoesNotExist when E[X] is infinite and
/// NumericalRangeError when the Erlang formula cannot be resolved.
double expected_time(const ServiceModel& model, const JobConfig& job);

struct Analytic {};
struct MonteCarlo {
    std::size_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
};
struct Lln {};
using EvalMethod = std::variant<Analytic, MonteCarlo, Lln>;

struct SweepRow {
    int k;
    int s;
    double rate;
    std::optional<double> expected_time;  // empty when unavailable
    std::string method;                   // "analytic" | "mc" | "lln" | "unavailable"
    std::optional<double> std_error;      // Monte Carlo rows only
    bool is_optimal = false;
    bool lln_boundary = false;            // LLN evaluated exactly at r = 1 - eps
    bool std_error_unreliable = false;
    struct Quantiles {
        double q05, median, q95;
    };
    std::optional<Quantiles> quantiles;   // reported alongside an unreliable std_error
    bool method_unavailable = false;      // no closed form / LLN not defined / numerically out of range
    std::string note;                     // error text for unavailable rows
};

struct SweepResult {
    int n;
    std::vector<SweepRow> rows;      // every divisor of n, increasing k
    std::optional<std::size_t> best; // index into rows; ties resolved toward larger k
    std::vector<int> tied_k;         // all k within tie tolerance of the minimum
    std::optional<Strategy> strategy;

    const SweepRow* optimal() const { return best ? &rows[*best] : nullptr; }
};

struct SweepOptions {
    /// When set, Analytic rows that fail with NoClosedForm or NumericalRangeError
    /// are re-evaluated by Monte Carlo.
    std::optional<MonteCarlo> fallback;
    McOptions mc;
    /// Relative gap below which two row values count as tied.
    double tie_tolerance = 1e-12;
};

SweepResult sweep(const ServiceModel& model, int n, const EvalMethod& method,
                  const SweepOptions& options = {});

struct OptimalK {
    double continuous;                 // theorem's real-valued optimum
    int best_divisor;                  // exact argmin over divisors of n
    std::optional<int> best_integer;   // exact argmin over all k in 1..n, when defined
    bool degenerate = false;
    std::string note;
};

/// Shifted exponential, data-dependent scaling: k* = n(-d/2 + sqrt(d + d^2/4)), d = delta/w.
/// w == 0 is deterministic; the result is k = n with `degenerate` set.
OptimalK optimal_k_sexp_data(int n, double delta, double w);

/// Pareto, server-dependent scaling: k* = (alpha n - 1)/(alpha + 1).
OptimalK optimal_k_pareto_server(int n, double alpha);

/// n*delta/k + lambda (n/(n-k))^{1/alpha}; needs 1 <= k < n.
double pareto_data_approx(int n, int k, double delta, double lambda, double alpha);

struct LlnValue {
    double value;
    bool at_boundary;  // r == 1 - eps, where the fast-worker fraction is taken as 1/2
};

/// Large-n approximation of E[Y_{k:n}] for BiModal(b, eps) at code rate r.
/// Server: p/r + b q/r. Data: shift/r + p + b q. p = 1{1 - eps > r}.
LlnValue bimodal_lln(ScalingModel scaling, double r, double b, double eps,
                     std::optional<double> shift = {});

/// Straggling probability at which the LLN-optimal strategy switches from
/// coding at r = 1 - eps to splitting: (b-1)/b (server) or (b-1)/(shift+b-1) (data).
double bimodal_lln_threshold(ScalingModel scaling, double b, std::optional<double> shift = {});

struct LowerBound {
    double value;
    bool vacuous;  // 1 - 21 xi / (n^2 eta^4) <= 0; value is then 0
};

/// Lower bound n (m - eta) (1 - 21 xi / (n^2 eta^4))^n on Pareto additive
/// replication, with m the mean and xi the fourth moment. Needs alpha > 4.
LowerBound pareto_replication_lower_bound(int n, double lambda, double alpha, double eta);

struct SplitVsReplicationOptions {
    int scan_max = 200;  // largest n in the splitting-wins scan (shifted exponential)
    std::size_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    double eta = 1.0;
    McOptions mc;
};

struct SplitVsReplication {
    int n;
    double splitting;                          // E[Y_{n:n}]
    double replication;                        // E[Y_{1:n}], exact or Monte Carlo
    std::string replication_method;            // "analytic" | "mc"
    std::optional<double> replication_std_error;
    std::optional<LowerBound> replication_lower_bound;
    std::string verdict;                       // "splitting" | "replication" | "tie"
    std::optional<int> splitting_wins_from;    // smallest scanned n after which splitting always wins
};

/// Splitting against replication under additive scaling.
SplitVsReplication splitting_vs_replication_report(const ServiceDistribution& dist, int n,
                                                   const SplitVsReplicationOptions& options = {});

}  // namespace redundancy
