#pragma once

#include <cstdint>
#include <random>

namespace stsal {

/// Uniform double in [0, 1) from the top 53 bits. Unlike the standard
/// distributions this is bit-identical across standard library implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [lo, hi] by modulo reduction.
inline std::uint64_t uniform_between(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

}  // namespace stsal
