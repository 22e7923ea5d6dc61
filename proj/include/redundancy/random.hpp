#pragma once

#include <cstdint>

namespace redundancy {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic 64-bit stream (SplitMix64). Cheap to construct, so one is
/// created per Monte Carlo trial from (base seed, trial index).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

    /// Substream for trial `index` of a run seeded with `base_seed`. A pure
    /// function of both arguments, so trials can be evaluated in any order.
    static RandomStream for_trial(std::uint64_t base_seed, std::uint64_t index) noexcept;

    std::uint64_t next_u64() noexcept {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform on (0, 1]: never returns 0, so log(U) and U^(-1/a) stay finite.
    double uniform() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

}  // namespace redundancy
