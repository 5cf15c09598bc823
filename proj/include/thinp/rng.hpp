// Pinned randomness: std::mt19937_64 seeded through std::seed_seq, with
// explicit rejection sampling for bounded draws.  Both are fully specified by
// the standard, so a (seed, stream) pair reproduces the same values on every
// platform; none of the distribution adaptors from <random> are used.
#pragma once

#include <cstdint>
#include <random>

namespace thinp {

inline std::mt19937_64 seeded_rng(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Unbiased draw from [0, n) by rejection.
inline uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
  uint64_t threshold = -n % n;  // 2^64 mod n
  for (;;) {
    uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace thinp
