#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/extremal.hpp"
#include "ap3/interval_set.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

// Block system for the averaging argument: all length-M progressions in [N]
// with common difference d in [1, k], k = floor(N / 2M^2). Differences are
// positive throughout.

// Number of members of the block system containing the whole progression
// (a, a+d, a+2d), by direct enumeration. A container with difference n must
// have n dividing d and 2d/n within its index range.
inline std::int64_t occurrence_count(std::int64_t a, std::int64_t d, std::int64_t n_len,
                                     std::int64_t m, std::int64_t k) {
  if (d < 1 || a < 1 || a + 2 * d > n_len) {
    throw std::invalid_argument("occurrence_count: progression not inside [N]");
  }
  std::int64_t total = 0;
  for (std::int64_t diff = 1; diff <= k; ++diff) {
    const std::int64_t last_start = n_len - (m - 1) * diff;
    for (std::int64_t s = 1; s <= last_start; ++s) {
      // progression point x belongs to the block iff x = s + j*diff, 0 <= j < m
      bool all_in = true;
      for (const std::int64_t x : {a, a + d, a + 2 * d}) {
        const std::int64_t off = x - s;
        if (off < 0 || off % diff != 0 || off / diff >= m) {
          all_in = false;
          break;
        }
      }
      if (all_in) ++total;
    }
  }
  return total;
}

struct VarnavidesCensus {
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t k = 0;
  std::int64_t r3_M = 0;
  std::int64_t set_size = 0;
  std::vector<std::int64_t> blocks_per_difference;  // |B_d| for d = 1..k
  std::int64_t total_blocks = 0;                    // |B|
  std::int64_t intersection_sum = 0;                // sum over blocks of |A ∩ B|
  std::int64_t rich_blocks = 0;                     // blocks with |A ∩ B| > r3(M)
  Rational lower_bound;                             // ((|A|/N - (r3(M)+1)/M) / M^4) N^2
  bool vacuous = false;                             // k = 0, empty block system
};

// ((sizeA/N - (r3M+1)/M) / M^4) * N^2, exact; may be negative.
inline Rational varnavides_lower_bound(std::int64_t size_a, std::int64_t n_len, std::int64_t m,
                                       std::int64_t r3_m) {
  if (m < 1 || m > n_len) throw std::invalid_argument("varnavides_lower_bound: need 1 <= M <= N");
  const Rational density_gap = Rational(size_a, n_len) - Rational(r3_m + 1, m);
  const Rational m4 = Rational(m) * m * m * m;
  return density_gap / m4 * n_len * n_len;
}

namespace detail {

// Elements of A inside block {start, start+d, ..., start+(M-1)d}, as indices
// 0..M-1 into the block.
inline std::int64_t block_intersection_size(const IntervalSet& a, std::int64_t start,
                                            std::int64_t diff, std::int64_t m) {
  std::int64_t c = 0;
  for (std::int64_t j = 0; j < m; ++j) {
    if (a.contains(start + j * diff)) ++c;
  }
  return c;
}

}  // namespace detail

// Full block census with every counting inequality of the averaging chain
// asserted exactly. k = 0 (N < 2M^2) degenerates to an empty system and is
// flagged vacuous rather than extrapolated.
inline VarnavidesCensus census(const IntervalSet& a, std::int64_t m, const R3Options& r3_opts = {}) {
  const std::int64_t n_len = a.interval_length();
  if (m < 3 || m > n_len) throw std::invalid_argument("census: need 3 <= M <= N");

  VarnavidesCensus c;
  c.N = n_len;
  c.M = m;
  c.k = n_len / (2 * m * m);
  c.r3_M = exact_r3(m, r3_opts).value;
  c.set_size = a.size();
  c.vacuous = (c.k == 0);

  std::int64_t interval_sum = 0;  // sum over d of |A ∩ I_d|
  for (std::int64_t d = 1; d <= c.k; ++d) {
    const std::int64_t nblocks = n_len - (m - 1) * d;
    c.blocks_per_difference.push_back(nblocks > 0 ? nblocks : 0);
    c.total_blocks += nblocks > 0 ? nblocks : 0;
    for (std::int64_t s = 1; s <= nblocks; ++s) {
      const std::int64_t isect = detail::block_intersection_size(a, s, d, m);
      c.intersection_sum += isect;
      if (isect > c.r3_M) ++c.rich_blocks;
    }
    // I_d = [(M-1)d + 1, N - (M-1)d]
    const std::int64_t lo = (m - 1) * d + 1;
    const std::int64_t hi = n_len - (m - 1) * d;
    for (std::int64_t x = lo; x <= hi; ++x) {
      if (a.contains(x)) ++interval_sum;
    }
  }
  c.lower_bound = varnavides_lower_bound(c.set_size, n_len, m, c.r3_M);

  // The four counting facts behind the lemma; violations are bugs.
  if (c.total_blocks > n_len * c.k) {
    throw std::logic_error("census: |B| exceeds Nk");
  }
  if (c.k >= 1) {
    if (c.intersection_sum < m * interval_sum) {
      throw std::logic_error("census: intersection sum below M * interval coverage");
    }
    if (interval_sum < c.k * (c.set_size - 2 * m * c.k)) {
      throw std::logic_error("census: interval coverage below k(|A| - 2Mk)");
    }
  }
  if (c.intersection_sum > m * c.rich_blocks + c.r3_M * (c.total_blocks - c.rich_blocks)) {
    throw std::logic_error("census: intersection sum exceeds rich/poor split bound");
  }
  const Rational rich_lb =
      Rational(c.k * (c.set_size - 2 * m * c.k)) - Rational(c.total_blocks * c.r3_M, m);
  if (Rational(c.rich_blocks) < rich_lb) {
    throw std::logic_error("census: rich block count below its exact lower bound");
  }
  return c;
}

struct VarnavidesReport {
  VarnavidesCensus census;
  std::int64_t t3 = 0;            // T3(A)
  std::int64_t block_t3_sum = 0;  // sum over blocks of T3(A ∩ B)
  Rational averaged_rhs;          // (4/M^2) * block_t3_sum
  bool averaging_ok = false;      // T3(A) >= (4/M^2) sum_B T3(A ∩ B)
  bool bound_ok = false;          // T3(A) >= lower bound
  bool passed = false;

  std::string first_failure() const {
    if (!averaging_ok) return "averaging";
    if (!bound_ok) return "lower_bound";
    return "";
  }
};

// Checks the full chain exactly: the averaged progression count over the
// block system, the census inequalities (asserted inside census()), and the
// closed-form lower bound against the true T3(A).
inline VarnavidesReport verify_lemma(const IntervalSet& a, std::int64_t m,
                                     const R3Options& r3_opts = {}) {
  VarnavidesReport rep;
  rep.census = census(a, m, r3_opts);
  rep.t3 = count_3aps(a);

  const std::int64_t n_len = a.interval_length();
  for (std::int64_t d = 1; d <= rep.census.k; ++d) {
    const std::int64_t nblocks = n_len - (m - 1) * d;
    for (std::int64_t s = 1; s <= nblocks; ++s) {
      // progressions inside A ∩ B correspond to index progressions i+l = 2j
      std::vector<bool> present(static_cast<std::size_t>(m), false);
      for (std::int64_t j = 0; j < m; ++j) present[static_cast<std::size_t>(j)] = a.contains(s + j * d);
      for (std::int64_t i = 0; i < m; ++i) {
        if (!present[static_cast<std::size_t>(i)]) continue;
        for (std::int64_t step = 1; i + 2 * step < m; ++step) {
          if (present[static_cast<std::size_t>(i + step)] && present[static_cast<std::size_t>(i + 2 * step)]) {
            ++rep.block_t3_sum;
          }
        }
      }
    }
  }
  rep.averaged_rhs = Rational(4 * rep.block_t3_sum, m * m);
  rep.averaging_ok = Rational(rep.t3) >= rep.averaged_rhs;
  rep.bound_ok = Rational(rep.t3) >= rep.census.lower_bound;
  rep.passed = rep.averaging_ok && rep.bound_ok;
  return rep;
}

}  // namespace ap3
