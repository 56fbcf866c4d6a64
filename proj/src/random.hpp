#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "tnrank/scalar.hpp"

namespace tnrank::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Portable sampler: mt19937_64 output is fixed by the standard, the
// transformations below are spelled out so results do not depend on the
// standard library's distribution implementations.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(splitmix64(seed)) {}

    // Uniform in (0, 1].
    double uniform() { return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard complex Gaussian: E|z|^2 = 1.
    Complex complex_normal() {
        const double r = std::sqrt(-std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(rng_() % span);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace tnrank::detail
