#include "redundancy/birthday.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "redundancy/errors.hpp"

namespace redundancy {

double log_truncated_exp_series(int d, double x) {
    if (d < 1) throw DomainError("series length d must be >= 1");
    if (x < 0.0) throw DomainError("series argument must be >= 0");
    if (x == 0.0) return 0.0;
    const double log_x = std::log(x);
    // Terms j*ln(x) - ln(j!) increase while j < x, so the largest is at min(floor(x), d-1).
    const int top = std::min(d - 1, static_cast<int>(std::floor(x)));
    const double peak = top * log_x - std::lgamma(top + 1.0);
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += std::exp(j * log_x - std::lgamma(j + 1.0) - peak);
    return peak + std::log(acc);
}

namespace {

// Tail bound for t >= T. With f(t) = exp(-t + n ln S_d(t/n)),
//   (ln f)'(t) = -rho(t/n),  rho(x) = (x^{d-1}/(d-1)!) / S_d(x),
// and rho is nondecreasing, so integral_T^inf f <= f(T) / rho(T/n).
double tail_bound(int n, int d, double t) {
    const double x = t / n;
    const double log_s = log_truncated_exp_series(d, x);
    const double log_f = -t + n * log_s;
    if (x == 0.0) return d == 1 ? std::exp(log_f) : std::numeric_limits<double>::infinity();
    const double log_rho = (d - 1) * std::log(x) - std::lgamma(static_cast<double>(d)) - log_s;
    return std::exp(log_f - log_rho);
}

}  // namespace

QuadratureResult birthday_integral(int n, int d, const QuadratureSpec& spec) {
    if (n < 1 || d < 1) throw DomainError("birthday expectation needs n >= 1 and d >= 1");

    // E(n, d) >= d, so d * tail_fraction is a safe absolute tail target.
    const double tail_target = spec.tail_fraction * d;
    const double nd = static_cast<double>(n) * d;
    double hi = nd + 50.0 * std::sqrt(nd) + 50.0;
    while (tail_bound(n, d, hi) > tail_target) hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 60 && hi - lo > 1e-3 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (tail_bound(n, d, mid) <= tail_target)
            hi = mid;
        else
            lo = mid;
    }
    const double truncation = hi;
    const double tail = tail_bound(n, d, truncation);

    auto integrand = [n, d](double t) {
        return std::exp(-t + n * log_truncated_exp_series(d, t / n));
    };
    // Boost stops refining each panel against its own share of the tolerance,
    // so the summed estimate can land just above tol * L1; ask for more and retry.
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    double requested = spec.relative_tolerance;
    for (int attempt = 0; attempt < 3; ++attempt, requested /= 10.0) {
        value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, 0.0, truncation, spec.max_depth, requested, &error, &l1);
        if (error <= spec.relative_tolerance * l1) break;
    }
    const double total_error = error + tail;
    // The integrand is positive, so l1 == value.
    if (!std::isfinite(value) || error > spec.relative_tolerance * l1 || tail > tail_target) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", total_error);
        throw QuadratureFailure("birthday integral (n=" + std::to_string(n) + ", d=" +
                                std::to_string(d) + "): error estimate " + buf + " above target");
    }
    return {value, total_error, truncation};
}

double birthday_asymptotic(int n, int d) {
    if (n < 1 || d < 1) throw DomainError("birthday asymptote needs n >= 1 and d >= 1");
    const double inv_d = 1.0 / d;
    return std::exp(std::lgamma(d + 1.0) * inv_d + std::lgamma(1.0 + inv_d) +
                    (1.0 - inv_d) * std::log(static_cast<double>(n)));
}

double replication_additive_sexp_mean(int n, double delta, double w, const QuadratureSpec& spec) {
    if (n < 1) throw DomainError("replication needs n >= 1");
    return n * delta + (w / n) * birthday_expectation(n, n, spec);
}

double replication_additive_sexp_asymptotic(int n, double delta, double w) {
    if (n < 1) throw DomainError("replication needs n >= 1");
    return n * delta + (w / n) * birthday_asymptotic(n, n);
}

}  // namespace redundancy
