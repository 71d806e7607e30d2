#pragma once

#include <cstdint>

namespace conjfix {

/// splitmix64: tiny, fast, and — unlike the standard library's
/// distributions — bit-for-bit reproducible on every toolchain.  All seeded
/// randomness in the library (property suites, randomized reports) routes
/// through this so identical seeds give byte-identical outputs.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [lo, hi) from the top 53 bits.
  double uniform(double lo, double hi) noexcept {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  /// Integer in [lo, hi] (inclusive); lo <= hi required.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Dyadic rational k / 2^denom_log2 with |value| <= mag.  Exact in IEEE
  /// doubles, so differences of these never round — used by the property
  /// generators to make zero-tolerance identity checks airtight.
  double dyadic(double mag, int denom_log2) noexcept {
    double denom = static_cast<double>(1LL << denom_log2);
    std::int64_t k_max = static_cast<std::int64_t>(mag * denom);
    return static_cast<double>(uniform_int(-k_max, k_max)) / denom;
  }

  bool chance(double p) noexcept { return uniform(0.0, 1.0) < p; }
};

}  // namespace conjfix
