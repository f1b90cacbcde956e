#pragma once

#include <cstdint>
#include <random>

namespace beacon {

// All randomness in the simulator flows through mt19937_64 seeded from the
// helpers below. The raw engine output is pinned by the C++ standard and the
// bounded draws are hand-rolled, so identical seeds give identical results
// on every platform and at any parallelism degree.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Splittable sub-seed: trial (or epoch) i of a run with master seed s draws
/// from sub_seed(s, i). Two splitmix64 rounds decorrelate adjacent indices.
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ED270B7A349F87ull));
}

/// Unbiased draw from [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return r % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
    return double(gen() >> 11) * 0x1.0p-53;
}

}  // namespace beacon
