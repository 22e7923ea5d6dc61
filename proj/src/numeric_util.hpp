#pragma once

// Helpers shared by the library translation units. Not installed.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redundancy {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Shortest decimal that round-trips.
inline std::string format_short(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

/// Binomial(n, p) pmf, built outward from the mode with the ratio recurrence so
/// no term is formed from large factorials.
std::vector<double> binomial_pmf(int n, double p);

/// Pairwise (cascade) summation; result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace redundancy
