#include "redundancy/random.hpp"

namespace redundancy {

RandomStream RandomStream::for_trial(std::uint64_t base_seed, std::uint64_t index) noexcept {
    // Two rounds of mixing decorrelate neighbouring indices and neighbouring seeds.
    return RandomStream(mix64(base_seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace redundancy
