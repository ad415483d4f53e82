#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "latfluct/vec.hpp"

namespace latfluct {

// Counter-based randomness: every variate is a pure function of
// (seed, replicate, site, slot). Enlarging the enumeration window or changing
// the evaluation order therefore never changes the displacement of a given
// site, and replicate streams can be evaluated in any partition.
namespace rng {

inline constexpr std::uint64_t kZetaSite = 0xffffffffffffffffULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Pack a lattice site into a 64-bit key (21 bits per signed coordinate).
inline std::uint64_t site_key(const Site& n, int d) {
    std::uint64_t k = 0;
    for (int i = 0; i < d; ++i) {
        const std::uint64_t c = static_cast<std::uint64_t>(n[i] + (1LL << 20)) & 0x1fffffULL;
        k |= c << (21 * i);
    }
    return k | (static_cast<std::uint64_t>(d) << 61);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t replicate,
                                  std::uint64_t site, std::uint32_t slot) {
    std::uint64_t h = mix64(seed ^ 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (replicate * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    h = mix64(h ^ (site * 0xda942042e4dd58b5ULL + 0x8bb84b93962eacc9ULL));
    h = mix64(h ^ (static_cast<std::uint64_t>(slot) * 0xca01f9dd51b143dfULL + 1ULL));
    return h;
}

// Uniform on (0,1]; never returns 0 so it is safe inside log().
inline double uniform(std::uint64_t seed, std::uint64_t replicate, std::uint64_t site,
                      std::uint32_t slot) {
    const std::uint64_t h = counter_hash(seed, replicate, site, slot);
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal via Box-Muller on slots (2*j, 2*j+1).
inline double standard_normal(std::uint64_t seed, std::uint64_t replicate,
                              std::uint64_t site, std::uint32_t pair_index) {
    const double u1 = uniform(seed, replicate, site, 2 * pair_index);
    const double u2 = uniform(seed, replicate, site, 2 * pair_index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Displacement xi_n with density phi_a: coordinates i.i.d. N(0, a/2).
inline Vec gaussian_displacement(std::uint64_t seed, std::uint64_t replicate,
                                 const Site& n, int d, double a) {
    const std::uint64_t key = site_key(n, d);
    const double sigma = std::sqrt(0.5 * a);
    Vec xi(d);
    for (int j = 0; j < d; ++j)
        xi[j] = sigma * standard_normal(seed, replicate, key, static_cast<std::uint32_t>(j));
    return xi;
}

// Shared uniform shift zeta on [0,1)^d for the stationarized process.
inline Vec uniform_shift(std::uint64_t seed, std::uint64_t replicate, int d) {
    Vec zeta(d);
    for (int j = 0; j < d; ++j) {
        const std::uint64_t h =
            counter_hash(seed, replicate, kZetaSite, static_cast<std::uint32_t>(j));
        zeta[j] = static_cast<double>(h >> 11) * 0x1.0p-53;
    }
    return zeta;
}

} // namespace rng
} // namespace latfluct
