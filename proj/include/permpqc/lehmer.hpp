#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "permpqc/permutation.hpp"

namespace permpqc {

// Factoradic (Lehmer code) bijection between permutations of degree n and
// integers in [0, n!), lexicographic variant: digit d_i counts later images
// smaller than images[i], rank = sum d_i * (n-1-i)!.

inline BigUint factorial(std::size_t n) {
  BigUint f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

inline BigUint rank(const Permutation& p) {
  const auto& img = p.images();
  const std::size_t n = img.size();
  BigUint result = 0;
  BigUint weight = 1;  // (n-1-i)! built up from the right
  for (std::size_t handled = 0; handled < n; ++handled) {
    const std::size_t i = n - 1 - handled;
    unsigned digit = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (img[j] < img[i]) ++digit;
    if (digit != 0) result += weight * digit;
    weight *= static_cast<unsigned>(handled + 1);
  }
  return result;
}

inline Permutation unrank(std::size_t degree, const BigUint& value) {
  if (degree == 0) throw std::invalid_argument("unrank: degree must be >= 1");
  if (value.sign() < 0) throw std::out_of_range("unrank: negative rank");

  std::vector<BigUint> fact(degree);
  fact[0] = 1;
  for (std::size_t i = 1; i < degree; ++i) fact[i] = fact[i - 1] * static_cast<unsigned>(i);
  if (value >= fact[degree - 1] * static_cast<unsigned>(degree))
    throw std::out_of_range("unrank: rank >= degree!");

  std::vector<std::uint32_t> available(degree);
  std::iota(available.begin(), available.end(), 0u);
  std::vector<std::uint32_t> img(degree);
  BigUint rem = value;
  for (std::size_t i = 0; i < degree; ++i) {
    const BigUint& w = fact[degree - 1 - i];
    const std::size_t digit = static_cast<std::size_t>(rem / w);
    rem %= w;
    img[i] = available[digit];
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Permutation::from_zero_based(std::move(img));
}

inline BigUint decode_message(const Permutation& p) { return rank(p); }

struct EncodedMessage {
  Permutation value;
  // Set when the rank is >= the subgroup order: still a valid message
  // permutation, but outside the integer range the exchange nominally carries.
  bool exceeds_subgroup_order = false;
};

inline EncodedMessage encode_message(std::size_t degree, const BigUint& message,
                                     const BigUint& subgroup_order) {
  EncodedMessage out{unrank(degree, message), message >= subgroup_order};
  return out;
}

}  // namespace permpqc
