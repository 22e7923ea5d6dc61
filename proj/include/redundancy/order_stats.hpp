#pragma once

#include <vector>

namespace redundancy {

/// Harmonic numbers H_0..H_max, accumulated once in extended precision.
class HarmonicTable {
public:
    explicit HarmonicTable(int max_index);

    int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }

    /// H_j; grows a private copy on demand when j > max_index().
    double operator()(int j) const;

    /// H_n - H_m for 0 <= m <= n, formed in extended precision.
    double difference(int n, int m) const;

    /// Process-wide table, pre-filled to 4096 entries.
    static const HarmonicTable& shared();

private:
    std::vector<long double> values_;
};

/// E[X_{k:n}] for X ~ Exp(w): w * (H_n - H_{n-k}).
double exp_order_mean(int n, int k, double w);

/// Tuning for the gamma order-statistic formula.
struct ErlangOrderOptions {
    /// Largest n*s accepted before any work is done.
    long long max_units = 100000;
    /// Largest tolerated sum|terms| / |sum| in the alternating outer sum. With
    /// 64-bit long double mantissas, 1e8 keeps about 11 significant digits.
    long double max_cancellation = 1e8L;
};

/// E[Z_{k:n}] for Z ~ Erlang(s, w), by the Gupta alternating-sum formula with
/// coefficients of (sum_{l<s} t^l/l!)^m obtained by repeated convolution.
/// Throws NumericalRangeError naming (n, k, s) when the alternating sum cancels
/// beyond the configured limit.
double erlang_order_mean(int n, int k, int s, double w, const ErlangOrderOptions& options = {});

/// Same expectation by integrating P{Z_{k:n} > t} = I_{Q(s, t/w)}(n-k+1, k), with Q the
/// upper regularized gamma. Slower, but has no cancellation, so it covers the pairs the
/// closed form refuses. Throws NumericalRangeError if the relative error exceeds 1e-10.
double erlang_order_mean_quadrature(int n, int k, int s, double w);

/// E[X_{k:n}] for X ~ Pareto(lambda, alpha), evaluated with log-gamma.
/// Throws MomentDoesNotExist when alpha <= 1.
double pareto_order_mean(int n, int k, double lambda, double alpha);

/// Large-x approximation Gamma(x + beta) / Gamma(x + alpha) ~ x^(beta - alpha).
double gamma_ratio_approx(double x, double beta, double alpha);

/// Exact Gamma(x + beta) / Gamma(x + alpha) via log-gamma; companion to the approximation.
double gamma_ratio(double x, double beta, double alpha);

/// E[X_{k:n}] for single-unit two-point service times {1, b}.
double bimodal_order_mean(int n, int k, double b, double eps);

/// One support point of the k-th order statistic of sums of s two-point draws.
struct SupportPoint {
    int stragglers;  // w: how many of the s units took value b
    double value;    // s - w + w*b
    double probability;
};

/// Full pmf of Y_{k:n} where Y is the sum of s i.i.d. BiModal(b, eps) units.
std::vector<SupportPoint> bimodal_sum_order_pmf(int n, int k, int s, double b, double eps);

/// E[Y_{k:n}] for the same Y.
double bimodal_sum_order_mean(int n, int k, int s, double b, double eps);

}  // namespace redundancy
