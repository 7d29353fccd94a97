#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permpqc/rng.hpp"
#include "permpqc/uint128.hpp"

namespace permpqc {

using BigUint = boost::multiprecision::cpp_int;

// A permutation of {1..n}, stored as 0-based images: images()[i] is the image
// of point i. External text forms are 1-based.
//
// Composition convention (pinned by the conformance vectors, which are
// order-sensitive): the right factor acts first, (p * q)(x) = p(q(x)).
// A product written p^m * g * p^n therefore applies p^n, then g, then p^m.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    if (degree == 0) throw std::invalid_argument("Permutation: degree must be >= 1");
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    return Permutation(std::move(img), unchecked_tag{});
  }

  // images[i] = image of point i+1, values in {1..n}.
  static Permutation from_one_based(const std::vector<std::uint32_t>& images) {
    std::vector<std::uint32_t> img(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] == 0 || images[i] > images.size())
        throw std::invalid_argument("Permutation: image out of range");
      img[i] = images[i] - 1;
    }
    check_bijection(img);
    return Permutation(std::move(img), unchecked_tag{});
  }

  static Permutation from_zero_based(std::vector<std::uint32_t> images) {
    check_bijection(images);
    return Permutation(std::move(images), unchecked_tag{});
  }

  std::size_t degree() const noexcept { return images_.size(); }

  // Image of a 0-based point.
  std::uint32_t operator()(std::uint32_t point) const { return images_[point]; }

  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  std::vector<std::uint32_t> one_based() const {
    std::vector<std::uint32_t> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct unchecked_tag {};
  Permutation(std::vector<std::uint32_t> images, unchecked_tag) : images_(std::move(images)) {
#ifndef NDEBUG
    check_bijection(images_);
#endif
  }

  static void check_bijection(const std::vector<std::uint32_t>& img) {
    if (img.empty()) throw std::invalid_argument("Permutation: degree must be >= 1");
    std::vector<bool> seen(img.size(), false);
    for (std::uint32_t v : img) {
      if (v >= img.size() || seen[v])
        throw std::invalid_argument("Permutation: images are not a bijection");
      seen[v] = true;
    }
  }

  std::vector<std::uint32_t> images_;

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation power(const Permutation&, u128);
  friend Permutation power(const Permutation&, const BigUint&);
  friend Permutation random_permutation(std::size_t, SeededRng&);
};

// p * q with q acting first: result(x) = p(q(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<std::uint32_t> img(p.degree());
  const auto& pi = p.images();
  const auto& qi = q.images();
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = pi[qi[i]];
  return Permutation(std::move(img), Permutation::unchecked_tag{});
}

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

inline Permutation inverse(const Permutation& p) {
  std::vector<std::uint32_t> img(p.degree());
  const auto& pi = p.images();
  for (std::size_t i = 0; i < img.size(); ++i) img[pi[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(img), Permutation::unchecked_tag{});
}

// Square-and-multiply: O(n) work per squaring, O(log e) steps.
inline Permutation power(const Permutation& p, u128 exponent) {
  const std::size_t n = p.degree();
  if (n == 0) throw std::invalid_argument("power: degree must be >= 1");
  std::vector<std::uint32_t> result(n);
  std::iota(result.begin(), result.end(), 0u);
  std::vector<std::uint32_t> base = p.images();
  std::vector<std::uint32_t> scratch(n);
  while (exponent != 0) {
    if (exponent & 1) {
      for (std::size_t i = 0; i < n; ++i) scratch[i] = base[result[i]];
      result.swap(scratch);
    }
    exponent >>= 1;
    if (exponent == 0) break;
    for (std::size_t i = 0; i < n; ++i) scratch[i] = base[base[i]];
    base.swap(scratch);
  }
  return Permutation(std::move(result), Permutation::unchecked_tag{});
}

inline Permutation power(const Permutation& p, const BigUint& exponent) {
  if (exponent.sign() < 0) throw std::invalid_argument("power: negative exponent");
  const std::size_t n = p.degree();
  if (n == 0) throw std::invalid_argument("power: degree must be >= 1");
  std::vector<std::uint32_t> result(n);
  std::iota(result.begin(), result.end(), 0u);
  std::vector<std::uint32_t> base = p.images();
  std::vector<std::uint32_t> scratch(n);
  BigUint e = exponent;
  while (e != 0) {
    if (bit_test(e, 0)) {
      for (std::size_t i = 0; i < n; ++i) scratch[i] = base[result[i]];
      result.swap(scratch);
    }
    e >>= 1;
    if (e == 0) break;
    for (std::size_t i = 0; i < n; ++i) scratch[i] = base[base[i]];
    base.swap(scratch);
  }
  return Permutation(std::move(result), Permutation::unchecked_tag{});
}

// Canonical cycle form: each cycle starts at its minimum point, cycles are
// ordered by that minimum, fixed points appear as length-1 cycles.
struct CycleDecomposition {
  std::vector<std::vector<std::uint32_t>> cycles;  // 0-based points
  std::vector<std::uint32_t> lengths;              // in cycle order

  std::vector<std::uint32_t> sorted_lengths() const {
    auto out = lengths;
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline CycleDecomposition cycle_decomposition(const Permutation& p) {
  const std::size_t n = p.degree();
  CycleDecomposition dec;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cycle;
    std::uint32_t pt = static_cast<std::uint32_t>(start);
    do {
      cycle.push_back(pt);
      seen[pt] = true;
      pt = p(pt);
    } while (pt != start);
    dec.lengths.push_back(static_cast<std::uint32_t>(cycle.size()));
    dec.cycles.push_back(std::move(cycle));
  }
  return dec;
}

// Order of the permutation: lcm of its cycle lengths.
inline BigUint order(const Permutation& p) {
  BigUint result = 1;
  for (std::uint32_t len : cycle_decomposition(p).lengths)
    result = boost::multiprecision::lcm(result, BigUint(len));
  return result;
}

// Uniformly random permutation via Fisher-Yates over the frozen rng.
inline Permutation random_permutation(std::size_t degree, SeededRng& rng) {
  if (degree == 0) throw std::invalid_argument("random_permutation: degree must be >= 1");
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  shuffle(img, rng);
  return Permutation(std::move(img), Permutation::unchecked_tag{});
}

}  // namespace permpqc
