#include "numeric_util.hpp"

#include <algorithm>

namespace redundancy {

std::vector<double> binomial_pmf(int n, double p) {
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (p <= 0.0) {
        pmf.front() = 1.0;
        return pmf;
    }
    if (p >= 1.0) {
        pmf.back() = 1.0;
        return pmf;
    }
    const double q = 1.0 - p;
    const int mode = std::clamp(static_cast<int>(std::floor((n + 1) * p)), 0, n);
    pmf[mode] = std::exp(log_binomial(n, mode) + mode * std::log(p) + (n - mode) * std::log(q));
    const double odds = p / q;
    for (int i = mode; i < n; ++i)
        pmf[i + 1] = pmf[i] * (static_cast<double>(n - i) / (i + 1)) * odds;
    for (int i = mode; i > 0; --i)
        pmf[i - 1] = pmf[i] * (static_cast<double>(i) / (n - i + 1)) / odds;
    return pmf;
}

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kBlock = 64;
    if (values.size() <= kBlock) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace redundancy
