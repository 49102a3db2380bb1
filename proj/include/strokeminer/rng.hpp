#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace strokeminer {

// Single PRNG used everywhere randomness is needed (synthetic data, fold
// shuffles, NBTree cross-validation). The algorithm is part of the external
// contract: identical seeds must produce identical data in any
// implementation of this toolkit, so we fix splitmix64 rather than relying
// on a standard library's distribution internals.
//
//   state' = state + 0x9E3779B97F4A7C15
//   z = state'; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB; output = z ^ z>>31
//
// Uniform doubles take the top 53 bits; Gaussians use the Box-Muller
// transform on two consecutive uniforms (no cached spare).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). bound must be > 0. Plain modulo; the
    // tiny bias is irrelevant at the bounds used here and keeps the stream
    // definition one line long.
    std::uint64_t next_below(std::uint64_t bound) {
        return next() % bound;
    }

    // Standard normal via Box-Muller. Consumes exactly two uniforms.
    double next_gaussian() {
        double u1 = 1.0 - next_unit();  // (0, 1], keeps log() finite
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

// Positional seed derivation: element i of a batch gets its own seed that
// depends only on (master, i), so batches can be generated in any order or
// in parallel and still match the sequential result.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t position) {
    std::uint64_t z = master + (position + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace strokeminer
