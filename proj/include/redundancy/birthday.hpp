#pragma once

namespace redundancy {

/// How the semi-infinite birthday integral is evaluated: adaptive
/// Gauss-Kronrod (15 points) on [0, T], T picked from a rigorous tail bound.
struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    /// Neglected tail beyond T must be below this fraction of the integral.
    double tail_fraction = 1e-12;
    unsigned max_depth = 30;
};

struct QuadratureResult {
    double value;
    double error_estimate;  // absolute, including the truncated tail bound
    double truncation;      // T
};

/// ln S_d(x), S_d(x) = sum_{j<d} x^j / j!, via a max-term-factored log-sum-exp.
double log_truncated_exp_series(int d, double x);

/// Expected number of draws with replacement from n coupons until some coupon
/// has been drawn d times: integral_0^inf e^{-t} S_d(t/n)^n dt.
/// Throws QuadratureFailure when the error estimate misses the target.
QuadratureResult birthday_integral(int n, int d, const QuadratureSpec& spec = {});

inline double birthday_expectation(int n, int d, const QuadratureSpec& spec = {}) {
    return birthday_integral(n, d, spec).value;
}

/// Fixed-d, large-n asymptote (d!)^{1/d} Gamma(1 + 1/d) n^{1 - 1/d}.
double birthday_asymptotic(int n, int d);

/// Mean completion time of an n-CU job replicated on n workers when each CU
/// takes delta + Exp(w): n*delta + (w/n) * E(n, n).
double replication_additive_sexp_mean(int n, double delta, double w, const QuadratureSpec& spec = {});

/// Same quantity with E(n, n) replaced by birthday_asymptotic(n, n).
double replication_additive_sexp_asymptotic(int n, double delta, double w);

}  // namespace redundancy
