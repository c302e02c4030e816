#pragma once
/// \file rng.hpp
/// \brief Seedable, portable random generator for scenario generation and
///        Monte Carlo batches.
///
/// The generator is SplitMix64 (Steele/Lea/Burton, the java.util
/// SplittableRandom finalizer). The algorithm identity matters: traces and
/// Monte Carlo statistics must reproduce bit-identically across platforms,
/// so no unspecified standard-library distributions are used.

#include <cstdint>

namespace encsim {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform angle in [-pi, pi).
    double uniform_angle() {
        return -3.14159265358979323846 + uniform01() * 6.28318530717958647692;
    }

    /// -1 or +1 with equal probability.
    int pick_sign() { return (next_u64() & 1ULL) ? 1 : -1; }

  private:
    std::uint64_t state_;
};

/// Derives an independent per-scenario seed from a batch seed and an index.
/// One SplitMix64 state advance keyed by the index; documented so batches
/// reproduce regardless of worker count or platform.
inline std::uint64_t derive_seed(std::uint64_t batch_seed, std::uint64_t index) {
    SplitMix64 mix(batch_seed ^ (0xA0761D6478BD642FULL * (index + 1)));
    return mix.next_u64();
}

}  // namespace encsim
