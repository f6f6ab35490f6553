#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gm/states.hpp"

namespace gm {

/// SplitMix64 step; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * xorshift64* (Vigna 2016): x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
 * output x * 0x2545F4914F6CDD1D. The state is seeded through SplitMix64 so
 * that a zero seed is harmless. Stream k of seed S starts from
 * splitmix64 applied to S + k * 0x9E3779B97F4A7C15.
 */
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
        std::uint64_t sm = seed + stream * 0x9E3779B97F4A7C15ULL;
        state_ = splitmix64(sm);
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() noexcept {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform point on the Bloch sphere: z = 2u - 1, phi = 2 pi v.
    Vec3 bloch() noexcept {
        const double z = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Standard normal via Box-Muller.
    double normal() noexcept {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace gm
