#ifndef GROUPOIDAL_RNG_HPP
#define GROUPOIDAL_RNG_HPP

#include <cstdint>
#include <random>

namespace groupoidal {

/// Derives an independent stream seed; used to keep parallel trials
/// reproducible regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) built directly from engine output, so results
/// are identical across standard libraries.
inline double uniform_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n); n must be positive.
inline int uniform_index(std::mt19937_64& rng, int n) {
    return static_cast<int>(uniform_unit(rng) * n);
}

}  // namespace groupoidal

#endif
