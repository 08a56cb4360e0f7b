#pragma once

#include <cstdint>
#include <random>

namespace exft {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// SplitMix64 finalizer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `stream` for trial `index` under `master`; order-independent.
inline uint64_t split_seed(uint64_t master, uint64_t index, uint64_t stream = 0) {
    return mix64(mix64(master ^ mix64(index)) + stream);
}

}  // namespace exft
