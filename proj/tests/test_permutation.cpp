#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "permpqc/permutation.hpp"
#include "support/oracles.hpp"

using namespace permpqc;
using permpqc::testing::brute_force_order;
using permpqc::testing::enumerate_lexicographic;
using permpqc::testing::naive_power;

namespace {
Permutation perm(std::initializer_list<std::uint32_t> one_based) {
  return Permutation::from_one_based(std::vector<std::uint32_t>(one_based));
}
}  // namespace

TEST_CASE("identity") {
  CHECK(Permutation::identity(3).one_based() == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(Permutation::identity(1).one_based() == std::vector<std::uint32_t>{1});
  CHECK(Permutation::identity(5).is_identity());
  CHECK_THROWS_AS(Permutation::identity(0), std::invalid_argument);
}

TEST_CASE("construction validates bijectivity") {
  CHECK_THROWS_AS(Permutation::from_one_based({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_based({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_based({1, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_based({}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_zero_based({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("compose applies the right factor first") {
  // (p * q)(x) = p(q(x)): with p = [1,3,2] and q = [2,1,3],
  // 1 -> q 2 -> p 3, 2 -> q 1 -> p 1, 3 -> q 3 -> p 2.
  CHECK(perm({1, 3, 2}) * perm({2, 1, 3}) == perm({3, 1, 2}));
  CHECK(perm({2, 1, 3}) * perm({1, 3, 2}) == perm({2, 3, 1}));
  CHECK_THROWS_AS(compose(perm({1, 2}), perm({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("inverse") {
  CHECK(inverse(perm({1, 2, 3})) == perm({1, 2, 3}));
  CHECK(inverse(perm({2, 3, 1})) == perm({3, 1, 2}));
  CHECK(inverse(perm({2, 1})) == perm({2, 1}));
  CHECK(compose(perm({2, 3, 1}), inverse(perm({2, 3, 1}))).is_identity());
}

TEST_CASE("group laws at degree 381") {
  SeededRng rng(5);
  const Permutation e = Permutation::identity(381);
  for (int i = 0; i < 10000; ++i) {
    const Permutation a = random_permutation(381, rng);
    const Permutation b = random_permutation(381, rng);
    const Permutation c = random_permutation(381, rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * e == a);
    REQUIRE(e * a == a);
    REQUIRE((a * inverse(a)).is_identity());
    REQUIRE((inverse(a) * a).is_identity());
  }
}

TEST_CASE("operations preserve bijectivity") {
  SeededRng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Permutation a = random_permutation(97, rng);
    const Permutation b = random_permutation(97, rng);
    for (const Permutation& out : {a * b, inverse(a), power(a, 123456789ULL)}) {
      auto img = out.images();
      std::sort(img.begin(), img.end());
      std::vector<std::uint32_t> iota(out.degree());
      std::iota(iota.begin(), iota.end(), 0u);
      REQUIRE(img == iota);
    }
  }
}

TEST_CASE("power basics") {
  const Permutation c3 = perm({2, 3, 1});
  CHECK(power(c3, u128(0)).is_identity());
  CHECK(power(c3, u128(3)).is_identity());
  CHECK(power(c3, u128(1)) == c3);
  CHECK(power(c3, BigUint(3)).is_identity());
}

TEST_CASE("power equals repeated composition") {
  SeededRng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Permutation p = random_permutation(60, rng);
    Permutation acc = Permutation::identity(60);
    for (std::uint64_t e = 0; e <= 64; ++e) {
      REQUIRE(power(p, u128(e)) == acc);
      acc = p * acc;
    }
  }
}

TEST_CASE("power is additive in the exponent") {
  SeededRng rng(8);
  const Permutation p = random_permutation(381, rng);
  for (int i = 0; i < 50; ++i) {
    const u128 a = rng.uniform_u128_below((u128(1) << 90));
    const u128 b = rng.uniform_u128_below((u128(1) << 90));
    REQUIRE(power(p, a + b) == power(p, a) * power(p, b));
  }
}

TEST_CASE("cycle decomposition canonical form") {
  const auto id3 = cycle_decomposition(Permutation::identity(3));
  CHECK(id3.cycles.size() == 3);
  CHECK(id3.sorted_lengths() == std::vector<std::uint32_t>{1, 1, 1});

  const auto c3 = cycle_decomposition(perm({2, 3, 1}));
  REQUIRE(c3.cycles.size() == 1);
  CHECK(c3.cycles[0] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(c3.lengths == std::vector<std::uint32_t>{3});

  SeededRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Permutation p = random_permutation(120, rng);
    const auto dec = cycle_decomposition(p);

    std::size_t total = 0;
    std::uint32_t previous_min = 0;
    bool first = true;
    std::vector<bool> seen(p.degree(), false);
    for (const auto& cycle : dec.cycles) {
      total += cycle.size();
      const auto min_it = std::min_element(cycle.begin(), cycle.end());
      REQUIRE(min_it == cycle.begin());  // rotated to start at the minimum
      REQUIRE((first || cycle.front() > previous_min));
      previous_min = cycle.front();
      first = false;
      for (std::size_t j = 0; j < cycle.size(); ++j) {
        REQUIRE(!seen[cycle[j]]);
        seen[cycle[j]] = true;
        REQUIRE(p(cycle[j]) == cycle[(j + 1) % cycle.size()]);
      }
    }
    REQUIRE(total == p.degree());

    // rebuild from cycles
    std::vector<std::uint32_t> img(p.degree());
    for (const auto& cycle : dec.cycles)
      for (std::size_t j = 0; j < cycle.size(); ++j)
        img[cycle[j]] = cycle[(j + 1) % cycle.size()];
    REQUIRE(Permutation::from_zero_based(img) == p);
  }
}

TEST_CASE("order matches brute force for degree <= 8") {
  for (std::size_t n = 1; n <= 8; ++n) {
    enumerate_lexicographic(n, [](std::uint64_t, const Permutation& p) {
      REQUIRE(order(p) == BigUint(brute_force_order(p)));
    });
  }
}

TEST_CASE("order basics") {
  CHECK(order(Permutation::identity(5)) == 1);
  CHECK(order(perm({2, 1, 4, 3})) == 2);
}

TEST_CASE("random_permutation pinned draws") {
  SeededRng a(42);
  CHECK(random_permutation(3, a).one_based() == std::vector<std::uint32_t>{1, 3, 2});
  SeededRng b(42);
  CHECK(random_permutation(8, b).one_based() ==
        std::vector<std::uint32_t>{4, 2, 7, 3, 5, 1, 8, 6});
  SeededRng c(0);
  CHECK(random_permutation(1, c).one_based() == std::vector<std::uint32_t>{1});
  CHECK_THROWS_AS(random_permutation(0, c), std::invalid_argument);
}
