#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "permpqc/permutation.hpp"

namespace permpqc {

// Public parameters: a generator's cycle lengths are the first dim primes, so
// it generates a cyclic subgroup of order omega = product of those primes
// (squarefree, hence lcm == product). dim 16 gives degree 381 and
// omega = 32589158477190044730.
struct GroupParams {
  unsigned dim = 0;
  std::vector<std::uint32_t> primes;          // first dim primes, increasing
  std::vector<std::uint32_t> partition_sums;  // running sums of primes
  std::size_t degree = 0;                     // last partition sum
  BigUint omega;                              // primorial

  // Protocol-layer exponent arithmetic is 128-bit; beyond that width the
  // parameter set is display/experimentation only.
  u128 omega_u128() const {
    if (omega > (BigUint(1) << 128) - 1)
      throw std::overflow_error("omega exceeds 128 bits for dim " + std::to_string(dim));
    return omega.convert_to<u128>();
  }
};

inline GroupParams make_params(unsigned dim) {
  if (dim == 0) throw std::invalid_argument("make_params: dim must be >= 1");
  GroupParams params;
  params.dim = dim;
  std::uint32_t candidate = 2;
  while (params.primes.size() < dim) {
    bool prime = true;
    for (std::uint32_t d : params.primes) {
      if (d * d > candidate) break;
      if (candidate % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) params.primes.push_back(candidate);
    ++candidate;
  }
  params.omega = 1;
  std::uint32_t sum = 0;
  for (std::uint32_t p : params.primes) {
    sum += p;
    params.partition_sums.push_back(sum);
    params.omega *= p;
  }
  params.degree = sum;
  return params;
}

// Random element with the prescribed cycle type: a random arrangement of the
// points is sliced into consecutive blocks whose lengths are the primes in
// random order, and each block becomes one cycle.
inline Permutation generate_generator(const GroupParams& params, SeededRng& rng) {
  const Permutation arrangement = random_permutation(params.degree, rng);
  const auto& points = arrangement.images();
  std::vector<std::uint32_t> lengths = params.primes;
  shuffle(lengths, rng);

  std::vector<std::uint32_t> img(params.degree);
  std::size_t offset = 0;
  for (std::uint32_t len : lengths) {
    for (std::uint32_t j = 0; j < len; ++j)
      img[points[offset + j]] = points[offset + (j + 1) % len];
    offset += len;
  }
  return Permutation::from_zero_based(std::move(img));
}

struct GeneratorCheck {
  bool valid = false;
  std::string diagnostic;
};

// True iff the cycle-length multiset equals the parameter prime list.
inline GeneratorCheck validate_generator(const GroupParams& params, const Permutation& p) {
  if (p.degree() != params.degree)
    throw std::invalid_argument("validate_generator: degree mismatch");
  auto lengths = cycle_decomposition(p).sorted_lengths();
  std::vector<std::uint32_t> expected = params.primes;  // already sorted
  if (lengths == expected) return {true, "cycle lengths match the parameter prime list"};

  std::ostringstream diag;
  diag << "cycle lengths {";
  for (std::size_t i = 0; i < lengths.size(); ++i)
    diag << (i ? ", " : "") << lengths[i];
  diag << "} differ from the expected prime list {";
  for (std::size_t i = 0; i < expected.size(); ++i)
    diag << (i ? ", " : "") << expected[i];
  diag << "}";
  return {false, diag.str()};
}

}  // namespace permpqc
