#pragma once

#include <cstdint>
#include <random>

namespace geocenter {

/// Deterministic RNG wrapper. Distribution helpers are hand-rolled so the
/// byte-for-byte draw sequence is identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [0, n), n >= 1. Rejection sampling, unbiased.
  uint64_t bounded(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= lim);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace geocenter
