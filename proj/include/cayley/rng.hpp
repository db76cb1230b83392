#pragma once

#include <cstdint>

namespace cayley {

/// SplitMix64 finalizer (Steele/Lea/Flood). Used in counter mode: each
/// draw hashes (seed, stream index), so any index range can be generated
/// independently of any other. Identical seed implies identical stream
/// regardless of threading or evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// j-th uniform in [0,1) of the stream identified by `seed`.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = splitmix64(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace cayley
