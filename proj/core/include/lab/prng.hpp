#pragma once

#include <cstdint>

namespace lab {

/// splitmix64: the 64-bit-state generator of Steele, Lea and Flood (the
/// stream-splitting step of SplitMix, JDK 8 SplittableRandom). One xorshift-
/// multiply avalanche per draw over a Weyl sequence with increment
/// 0x9E3779B97F4A7C15. Chosen because the whole generator state is the seed
/// itself, which makes every stream reproducible from a single u64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) using the top 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace lab
