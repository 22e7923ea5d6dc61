#pragma once

#include <string_view>
#include <vector>

namespace redundancy {

/// n workers, a job of n computing units, and an [n, k] MDS code: each worker
/// runs s = n/k units and the job finishes when any k workers finish.
class JobConfig {
public:
    /// Throws InvalidArgument unless 1 <= k <= n and k divides n.
    JobConfig(int n, int k);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int s() const noexcept { return n_ / k_; }
    double rate() const noexcept { return static_cast<double>(k_) / n_; }

private:
    int n_;
    int k_;
};

enum class StrategyKind { Replication, Coding, Splitting };

struct Strategy {
    StrategyKind kind;
    double rate;
};

/// k == n is splitting (including n == 1), k == 1 replication, anything else coding.
Strategy classify(int n, int k);

std::string_view to_string(StrategyKind kind);

/// Divisors of n in increasing order.
std::vector<int> divisors(int n);

}  // namespace redundancy
