#include "redundancy/job.hpp"

#include <string>

#include "redundancy/errors.hpp"

namespace redundancy {

JobConfig::JobConfig(int n, int k) : n_(n), k_(k) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (k < 1 || k > n) throw InvalidArgument("k must satisfy 1 <= k <= n");
    if (n % k != 0)
        throw InvalidArgument("k=" + std::to_string(k) + " does not divide n=" + std::to_string(n));
}

Strategy classify(int n, int k) {
    const double rate = static_cast<double>(k) / n;
    if (k == n) return {StrategyKind::Splitting, rate};
    if (k == 1) return {StrategyKind::Replication, rate};
    return {StrategyKind::Coding, rate};
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Replication: return "replication";
        case StrategyKind::Coding: return "coding";
        case StrategyKind::Splitting: return "splitting";
    }
    return "?";
}

std::vector<int> divisors(int n) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    std::vector<int> out;
    for (int k = 1; k <= n; ++k)
        if (n % k == 0) out.push_back(k);
    return out;
}

}  // namespace redundancy
