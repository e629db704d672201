#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace strichartz {

// FNV-1a, used for seed derivation and config hashing. Stable across
// platforms, which std::hash is not.
inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t master, std::string_view tag, std::uint64_t a = 0,
                              std::uint64_t b = 0) {
    std::uint64_t h = fnv1a64(tag, master ^ 0x9e3779b97f4a7c15ULL);
    h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

// Deterministic generator: mt19937_64 is pinned by the standard, and we roll
// our own uniform/normal maps because the std distributions are not portable
// across library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive bounds
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    // Standard normal via Box-Muller (no caching, to keep the stream simple).
    double gauss() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> unit_phase() {
        const double th = 2.0 * M_PI * uniform01();
        return {std::cos(th), std::sin(th)};
    }

    // Complex standard normal: independent N(0, 1/2) parts.
    std::complex<double> complex_gauss() {
        const double re = gauss() * M_SQRT1_2;
        const double im = gauss() * M_SQRT1_2;
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace strichartz
