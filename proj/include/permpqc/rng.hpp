#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "permpqc/uint128.hpp"

namespace permpqc {

// Deterministic random stream with a frozen contract: the same seed must
// reproduce the same outputs on every platform, because key files and test
// vectors are regenerated from seeds alone. State transition is SplitMix64;
// bounded draws use rejection sampling, so there is no modulo bias.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejects raw draws below 2^64 mod bound.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, bound) for 128-bit bounds; the high word is drawn first.
  u128 uniform_u128_below(u128 bound) {
    if (bound == 0) throw std::invalid_argument("uniform_u128_below: zero bound");
    const u128 threshold = (static_cast<u128>(0) - bound) % bound;
    for (;;) {
      const u128 hi = next();
      const u128 lo = next();
      const u128 r = (hi << 64) | lo;
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates, iterating i = n-1 down to 1 with j = uniform_below(i + 1).
template <typename T>
void shuffle(std::vector<T>& values, SeededRng& rng) {
  for (std::size_t i = values.size(); i-- > 1;) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(values[i], values[j]);
  }
}

}  // namespace permpqc
