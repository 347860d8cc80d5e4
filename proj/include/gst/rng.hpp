#pragma once

#include <cmath>
#include <cstdint>

namespace gst {

/// SplitMix64 (Vigna's fixed-increment variant of Java's SplittableRandom).
/// Pinned as the project generator so simulation reports are reproducible
/// bit-for-bit; reference outputs for seed 0 start
/// 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Top 53 bits; the uniform draw is next_u53() * 2^-53 in [0,1).
    std::uint64_t next_u53() { return next() >> 11; }

    double next_unit() { return static_cast<double>(next_u53()) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Box-Muller standard normal; consumes exactly two draws.
    double next_normal() {
        double u1 = next_unit();
        const double u2 = next_unit();
        if (u1 <= 0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::uint64_t state_;
};

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the i-th sub-stream of a run seed. Chunk i of a simulation and
/// retry i of a geometric search both derive their generators this way.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(0x9E3779B97F4A7C15ULL * (index + 1)));
}

}  // namespace gst
