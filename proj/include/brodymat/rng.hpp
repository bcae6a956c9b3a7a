#pragma once

#include <cmath>
#include <cstdint>

#include "brodymat/numeric.hpp"

namespace brodymat {

// Splittable counter-style pseudorandom stream (SplitMix64 core).
// Independent sub-streams are derived by hashing (seed, index), so a
// simulation partitioned into chunks is reproducible for any worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed ^ kGamma)) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
        RandomStream r(0);
        r.state_ = mix(mix(seed + kGamma) ^ (index + 0xD1B54A32D192ED03ull));
        return r;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw strictly inside (0,1). The 53-bit grid never reaches 1;
    // an exact 0 (probability 2^-53) is rejected and redrawn.
    double uniform_open01() {
        double u;
        do {
            u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        } while (u == 0.0);
        return u;
    }

    // Box-Muller (cosine branch); fixed two-uniform consumption per draw.
    double normal() {
        const double u1 = uniform_open01();
        const double u2 = uniform_open01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double rayleigh(double sigma) {
        return sigma * std::sqrt(-2.0 * std::log(uniform_open01()));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t state_;
};

}  // namespace brodymat
