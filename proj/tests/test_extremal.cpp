#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <random>

#include "ap3/extremal.hpp"

using namespace ap3;

namespace {

// Independent oracle: scan all 2^N subsets for the largest progression-free
// one. Usable up to N = 20 or so.
std::int64_t enumeration_r3(int n) {
  std::int64_t best = 0;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    if (std::popcount(m) <= best) continue;
    bool free = true;
    for (int d = 1; free && 2 * d < n; ++d) {
      if (m & (m >> d) & (m >> (2 * d))) free = false;
    }
    if (free) best = std::popcount(m);
  }
  return best;
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

TEST_CASE("is_3ap_free on small examples") {
  CHECK(is_3ap_free(IntervalSet::of(5, {1, 2, 4, 5})));
  CHECK_FALSE(is_3ap_free(IntervalSet::of(3, {1, 2, 3})));
  CHECK(is_3ap_free(IntervalSet(4)));
  CHECK(is_3ap_free(IntervalSet::of(9, {7})));
  CHECK_FALSE(is_3ap_free(IntervalSet::of(9, {1, 5, 9})));
}

TEST_CASE("count_3aps on intervals and the empty set") {
  CHECK(count_3aps(IntervalSet::full(5)) == 4);
  CHECK(count_3aps(IntervalSet::full(9)) == 16);
  CHECK(count_3aps(IntervalSet(7)) == 0);
  // full interval closed form: sum over d of N - 2d
  for (std::int64_t n = 1; n <= 120; ++n) {
    std::int64_t expected = 0;
    for (std::int64_t d = 1; 2 * d < n; ++d) expected += n - 2 * d;
    CHECK(count_3aps(IntervalSet::full(n)) == expected);
  }
}

TEST_CASE("packed kernel matches the quadratic reference") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 2000)(rng);
    const auto s = random_set(rng, n, std::uniform_real_distribution<double>(0.0, 0.9)(rng));
    const auto fast = count_3aps(s);
    CHECK(fast == count_3aps_reference(s));
    CHECK((fast == 0) == is_3ap_free(s));
  }
  // word-boundary lengths
  for (const std::int64_t n : {63, 64, 65, 128, 2048}) {
    const auto s = random_set(rng, n, 0.4);
    CHECK(count_3aps(s) == count_3aps_reference(s));
  }
}

TEST_CASE("exact_r3 matches the enumeration oracle up to N=18") {
  for (int n = 1; n <= 18; ++n) {
    const auto rec = exact_r3(n);
    CHECK(rec.value == enumeration_r3(n));
    CHECK(rec.n == n);
    CHECK(rec.method == "exact");
    CHECK(rec.witness.interval_length() == n);
    CHECK(rec.witness.size() == rec.value);
    CHECK(is_3ap_free(rec.witness));
  }
}

TEST_CASE("exact_r3 known values and witnesses") {
  CHECK(exact_r3(4).value == 3);
  CHECK(exact_r3(5).value == 4);
  CHECK(exact_r3(5).witness == IntervalSet::of(5, {1, 2, 4, 5}));
  CHECK(exact_r3(9).value == 5);
  CHECK(exact_r3(9).witness == IntervalSet::of(9, {1, 2, 4, 8, 9}));
}

TEST_CASE("exact_r3 is monotone with unit steps") {
  const auto table = exact_r3_table(52);
  REQUIRE(table.size() == 52);
  for (std::size_t i = 1; i < table.size(); ++i) {
    CHECK(table[i].value >= table[i - 1].value);
    CHECK(table[i].value <= table[i - 1].value + 1);
    CHECK(is_3ap_free(table[i].witness));
    CHECK(table[i].witness.size() == table[i].value);
  }
}

TEST_CASE("exact_r3 refuses beyond the configured bound") {
  CHECK_THROWS_AS(exact_r3(61), std::invalid_argument);
  CHECK_THROWS_AS(exact_r3(0), std::invalid_argument);
  R3Options wide;
  wide.n_max = 70;
  CHECK_NOTHROW(exact_r3(61, wide));
}

TEST_CASE("greedy_3ap_free known outputs") {
  CHECK(greedy_3ap_free(1) == IntervalSet::of(1, {1}));
  CHECK(greedy_3ap_free(5) == IntervalSet::of(5, {1, 2, 4, 5}));
  CHECK(greedy_3ap_free(10) == IntervalSet::of(10, {1, 2, 4, 5, 10}));
}

TEST_CASE("greedy output is the base-3 digit pattern") {
  const auto s = greedy_3ap_free(400);
  CHECK(is_3ap_free(s));
  for (std::int64_t a = 1; a <= 400; ++a) {
    std::int64_t v = a - 1;
    bool digits01 = true;
    while (v > 0) {
      if (v % 3 == 2) digits01 = false;
      v /= 3;
    }
    CHECK(s.contains(a) == digits01);
  }
}

TEST_CASE("behrend_set outputs are progression-free and nonempty") {
  for (const std::int64_t n : {8, 50, 100, 500, 1000, 2000}) {
    const auto s = behrend_set(n);
    CHECK(is_3ap_free(s));
    CHECK_FALSE(s.empty());
    CHECK(s.interval_length() == n);
  }
  CHECK_THROWS_AS(behrend_set(7), std::invalid_argument);
}

TEST_CASE("behrend_set with explicit dimension") {
  // planar spheres are lattice-poor: the best circle over any admissible
  // digit box for N=100 carries exactly 4 points
  const auto s = behrend_set(100, 2);
  CHECK(is_3ap_free(s));
  CHECK(s == IntervalSet::of(100, {6, 38, 48, 56}));

  const auto s3 = behrend_set(1000, 3);
  CHECK(is_3ap_free(s3));
  CHECK(s3.size() == 12);
}
