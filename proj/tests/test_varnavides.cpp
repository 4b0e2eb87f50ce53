#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ap3/extremal.hpp"
#include "ap3/varnavides.hpp"

using namespace ap3;

namespace {

// Blocks with difference d containing the point x, counted directly.
std::int64_t blocks_containing(std::int64_t x, std::int64_t d, std::int64_t n, std::int64_t m) {
  std::int64_t cnt = 0;
  for (std::int64_t s = 1; s + (m - 1) * d <= n; ++s) {
    for (std::int64_t j = 0; j < m; ++j) {
      if (s + j * d == x) {
        ++cnt;
        break;
      }
    }
  }
  return cnt;
}

IntervalSet random_set(std::mt19937_64& rng, std::int64_t n, double density) {
  IntervalSet s(n);
  std::bernoulli_distribution member(density);
  for (std::int64_t a = 1; a <= n; ++a) {
    if (member(rng)) s.insert(a);
  }
  return s;
}

}  // namespace

TEST_CASE("occurrence_count examples") {
  CHECK(occurrence_count(1, 1, 10, 4, 3) == 1);  // only {1,2,3,4}
  CHECK(occurrence_count(1, 5, 60, 4, 2) == 0);  // no admissible container difference
  CHECK_THROWS_AS(occurrence_count(9, 1, 10, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(occurrence_count(1, 0, 10, 4, 3), std::invalid_argument);
}

TEST_CASE("every progression sits in at most floor(M^2/4) blocks") {
  for (std::int64_t n = 3; n <= 40; ++n) {
    for (std::int64_t m = 3; m <= 6; ++m) {
      // the bound is independent of the difference cap, so try the working
      // k and the largest possible one
      for (const std::int64_t k : {n / (2 * m * m), n}) {
        for (std::int64_t a = 1; a <= n; ++a) {
          for (std::int64_t d = 1; a + 2 * d <= n; ++d) {
            CHECK(occurrence_count(a, d, n, m, k) <= m * m / 4);
          }
        }
      }
    }
  }
}

TEST_CASE("census of the full interval at N=100, M=5") {
  const auto c = census(IntervalSet::full(100), 5);
  CHECK(c.k == 2);
  CHECK(c.r3_M == 4);
  CHECK(c.blocks_per_difference == std::vector<std::int64_t>{96, 92});
  CHECK(c.total_blocks == 188);
  CHECK_FALSE(c.vacuous);
  // direct block enumeration agrees
  std::int64_t direct = 0;
  for (std::int64_t d = 1; d <= 2; ++d) {
    for (std::int64_t s = 1; s + 4 * d <= 100; ++s) ++direct;
  }
  CHECK(c.total_blocks == direct);
  // full set: every block meets A in M points, so all blocks are rich
  CHECK(c.intersection_sum == 5 * 188);
  CHECK(c.rich_blocks == 188);
}

TEST_CASE("census of the empty set and the vacuous regime") {
  const auto c = census(IntervalSet(100), 5);
  CHECK(c.intersection_sum == 0);
  CHECK(c.rich_blocks == 0);
  CHECK(c.lower_bound < 0);

  const auto v = census(IntervalSet::full(10), 3);  // N < 2M^2
  CHECK(v.vacuous);
  CHECK(v.k == 0);
  CHECK(v.total_blocks == 0);
}

TEST_CASE("varnavides_lower_bound arithmetic") {
  CHECK(varnavides_lower_bound(100, 100, 8, 4) == Rational(1875, 2048));
  // |A|/N equals (r3(M)+1)/M: zero numerator
  CHECK(varnavides_lower_bound(100, 100, 5, 4) == 0);
  CHECK(varnavides_lower_bound(0, 50, 3, 2) < 0);
  CHECK_THROWS_AS(varnavides_lower_bound(10, 10, 11, 2), std::invalid_argument);
}

TEST_CASE("interval I_d elements lie in exactly M blocks of difference d") {
  for (const std::int64_t n : {40, 73, 100}) {
    for (std::int64_t m = 3; m <= 5; ++m) {
      const std::int64_t k = n / (2 * m * m);
      for (std::int64_t d = 1; d <= k; ++d) {
        const std::int64_t lo = (m - 1) * d + 1;
        const std::int64_t hi = n - (m - 1) * d;
        for (std::int64_t x = lo; x <= hi; ++x) {
          CHECK(blocks_containing(x, d, n, m) == m);
        }
      }
    }
  }
}

TEST_CASE("verify_lemma on the full interval") {
  const auto rep = verify_lemma(IntervalSet::full(60), 4);
  CHECK(rep.passed);
  CHECK(rep.t3 == 870);
  CHECK(rep.census.k == 1);
  CHECK(rep.averaging_ok);
  CHECK(rep.bound_ok);
  CHECK(rep.first_failure().empty());
}

TEST_CASE("verify_lemma on progression-free sets: bound must be nonpositive") {
  const auto rep = verify_lemma(behrend_set(200), 5);
  CHECK(rep.passed);
  CHECK(rep.t3 == 0);
  CHECK(rep.census.lower_bound <= 0);

  for (const std::int64_t n : {30, 100, 250}) {
    const auto g = greedy_3ap_free(n);
    for (std::int64_t m = 3; m <= 5; ++m) {
      CHECK(varnavides_lower_bound(g.size(), n, m, exact_r3(m).value) <= 0);
    }
  }
}

TEST_CASE("verify_lemma on the empty set is a vacuous pass") {
  const auto rep = verify_lemma(IntervalSet(100), 5);
  CHECK(rep.passed);
  CHECK(rep.t3 == 0);
  CHECK(rep.block_t3_sum == 0);
}

TEST_CASE("averaging inequality and final bound on random sets") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(20, 200)(rng);
    const auto a = random_set(rng, n, std::uniform_real_distribution<double>(0.1, 1.0)(rng));
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(3, 5)(rng);
    const auto rep = verify_lemma(a, m);
    CHECK(rep.averaging_ok);
    CHECK(rep.bound_ok);
    CHECK(rep.passed);
    // integer form: when the bound is positive, T3 >= ceil(bound)
    if (rep.census.lower_bound > 0) {
      CHECK(rep.t3 >= 1);
      CHECK(Rational(rep.t3) >= rep.census.lower_bound);
    }
  }
}
