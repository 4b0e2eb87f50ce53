#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/interval_set.hpp"

namespace ap3 {

namespace detail {

// 64 bits of the packed stream starting at absolute bit offset `off`.
// Bits past the end read as zero.
inline std::uint64_t bit_window(const std::vector<std::uint64_t>& w, std::int64_t off) {
  const auto q = static_cast<std::size_t>(off >> 6);
  const int r = static_cast<int>(off & 63);
  if (q >= w.size()) return 0;
  std::uint64_t lo = w[q] >> r;
  if (r != 0 && q + 1 < w.size()) lo |= w[q + 1] << (64 - r);
  return lo;
}

}  // namespace detail

// Number of progressions a, a+d, a+2d with d >= 1 inside A. Word-parallel:
// for each d, popcount of A & (A >> d) & (A >> 2d).
inline std::int64_t count_3aps(const IntervalSet& a) {
  const std::int64_t n = a.interval_length();
  const auto& w = a.words();
  std::int64_t total = 0;
  for (std::int64_t d = 1; 2 * d < n; ++d) {
    for (std::int64_t base = 0; base + 2 * d < n; base += 64) {
      total += std::popcount(detail::bit_window(w, base) &
                             detail::bit_window(w, base + d) &
                             detail::bit_window(w, base + 2 * d));
    }
  }
  return total;
}

// Plain O(N^2) counterpart; the kernel above must agree with it exactly.
inline std::int64_t count_3aps_reference(const IntervalSet& a) {
  const std::int64_t n = a.interval_length();
  std::int64_t total = 0;
  for (std::int64_t x = 1; x <= n; ++x) {
    if (!a.contains(x)) continue;
    for (std::int64_t d = 1; x + 2 * d <= n; ++d) {
      if (a.contains(x + d) && a.contains(x + 2 * d)) ++total;
    }
  }
  return total;
}

inline bool is_3ap_free(const IntervalSet& a) {
  const std::int64_t n = a.interval_length();
  const auto& w = a.words();
  for (std::int64_t d = 1; 2 * d < n; ++d) {
    for (std::int64_t base = 0; base + 2 * d < n; base += 64) {
      if (detail::bit_window(w, base) & detail::bit_window(w, base + d) &
          detail::bit_window(w, base + 2 * d)) {
        return false;
      }
    }
  }
  return true;
}

// Take each a in ascending order unless it closes a progression with two
// chosen elements. Produces the classic set {a : a-1 has only digits 0,1
// in base 3}.
inline IntervalSet greedy_3ap_free(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("greedy_3ap_free: N must be positive");
  IntervalSet out(n);
  std::vector<bool> blocked(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::int64_t> chosen;
  for (std::int64_t a = 1; a <= n; ++a) {
    if (blocked[static_cast<std::size_t>(a)]) continue;
    for (auto s : chosen) {
      const std::int64_t b = 2 * a - s;
      if (b <= n) blocked[static_cast<std::size_t>(b)] = true;
    }
    chosen.push_back(a);
    out.insert(a);
  }
  return out;
}

// Sphere-in-a-box construction. Digit vectors u in {0,...,m}^dim are encoded
// in base 2m+1, so adding two encoded values never carries; an integer
// identity a + c = 2b then forces the digit identity u + w = 2v, and a
// sphere |u|^2 = rho contains no midpoints except the trivial u = w.
// The digit range m and the radius rho are chosen to maximize the output,
// scanning every feasible m and every sphere.
inline IntervalSet behrend_set(std::int64_t n, int dim = 0) {
  if (n < 8) throw std::invalid_argument("behrend_set: N must be at least 8");
  if (dim < 0) throw std::invalid_argument("behrend_set: dimension must be positive");
  if (dim == 0) {
    dim = std::max(1, static_cast<int>(std::llround(std::sqrt(std::log(static_cast<double>(n))))));
  }

  std::int64_t best_size = 0;
  std::int64_t best_m = 0;
  std::int64_t best_rho = 0;

  const auto max_encoded = [&](std::int64_t m) -> std::int64_t {
    // m * (b^dim - 1) / (b - 1) with b = 2m+1, guarded against overflow
    const std::int64_t b = 2 * m + 1;
    std::int64_t value = 0;
    std::int64_t power = 1;
    for (int i = 0; i < dim; ++i) {
      value += m * power;
      if (value > n || power > n) return n + 1;  // already too large
      power *= b;
    }
    return value;
  };

  const auto for_each_vector = [&](std::int64_t m, auto&& visit) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(dim), 0);
    while (true) {
      visit(digits);
      int i = 0;
      while (i < dim && digits[static_cast<std::size_t>(i)] == m) {
        digits[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == dim) break;
      ++digits[static_cast<std::size_t>(i)];
    }
  };

  for (std::int64_t m = 1; max_encoded(m) <= n - 1; ++m) {
    std::vector<std::int64_t> sphere_count(static_cast<std::size_t>(dim * m * m) + 1, 0);
    for_each_vector(m, [&](const std::vector<std::int64_t>& u) {
      std::int64_t rho = 0;
      for (auto d : u) rho += d * d;
      ++sphere_count[static_cast<std::size_t>(rho)];
    });
    for (std::size_t rho = 0; rho < sphere_count.size(); ++rho) {
      if (sphere_count[rho] > best_size) {
        best_size = sphere_count[rho];
        best_m = m;
        best_rho = static_cast<std::int64_t>(rho);
      }
    }
  }
  if (best_size == 0) throw std::invalid_argument("behrend_set: no feasible digit range");

  IntervalSet out(n);
  const std::int64_t b = 2 * best_m + 1;
  for_each_vector(best_m, [&](const std::vector<std::int64_t>& u) {
    std::int64_t rho = 0;
    for (auto d : u) rho += d * d;
    if (rho != best_rho) return;
    std::int64_t value = 0;
    std::int64_t power = 1;
    for (auto d : u) {
      value += d * power;
      power *= b;
    }
    out.insert(value + 1);
  });

  if (!is_3ap_free(out)) throw std::logic_error("behrend_set: output is not progression-free");
  return out;
}

struct R3Options {
  std::int64_t n_max = 60;
};

struct R3Record {
  std::int64_t n = 0;
  std::int64_t value = 0;
  IntervalSet witness;
  std::string method;  // "exact" or "cached"
};

namespace detail {

// Depth-first search for a 3AP-free subset of [n] of a given size, visiting
// candidates in ascending order, so the first hit is the lexicographically
// least such set. `cap[len]` bounds the largest free subset of any interval
// of length len; since freeness is translation invariant, the elements
// above position a fit inside an interval of length n-a+1, which prunes
// hard once cap is known for shorter lengths.
class FreeSubsetSearch {
 public:
  FreeSubsetSearch(std::int64_t n, const std::vector<std::int64_t>& cap)
      : n_(n), cap_(cap), blocked_(static_cast<std::size_t>(n) + 1, false) {}

  bool find(std::int64_t target, std::vector<std::int64_t>* witness) {
    target_ = target;
    witness_ = witness;
    chosen_.clear();
    std::fill(blocked_.begin(), blocked_.end(), false);
    if (target == 0) return true;
    return extend(1);
  }

 private:
  bool extend(std::int64_t from) {
    const std::int64_t need = target_ - static_cast<std::int64_t>(chosen_.size());
    // open positions at or above `from`
    std::int64_t open = 0;
    for (std::int64_t a = from; a <= n_; ++a) {
      if (!blocked_[static_cast<std::size_t>(a)]) ++open;
    }
    for (std::int64_t a = from; a <= n_; ++a) {
      if (open < need || cap_[static_cast<std::size_t>(n_ - a + 1)] < need) return false;
      if (blocked_[static_cast<std::size_t>(a)]) continue;
      // choose a; block every b > a completing a progression with a chosen pair
      std::vector<std::int64_t> undo;
      for (auto s : chosen_) {
        const std::int64_t bb = 2 * a - s;
        if (bb <= n_ && !blocked_[static_cast<std::size_t>(bb)]) {
          blocked_[static_cast<std::size_t>(bb)] = true;
          undo.push_back(bb);
        }
      }
      chosen_.push_back(a);
      if (static_cast<std::int64_t>(chosen_.size()) == target_) {
        if (witness_) *witness_ = chosen_;
        return true;
      }
      if (extend(a + 1)) return true;
      chosen_.pop_back();
      for (auto bb : undo) blocked_[static_cast<std::size_t>(bb)] = false;
      --open;
    }
    return false;
  }

  std::int64_t n_;
  const std::vector<std::int64_t>& cap_;
  std::vector<bool> blocked_;
  std::vector<std::int64_t> chosen_;
  std::int64_t target_ = 0;
  std::vector<std::int64_t>* witness_ = nullptr;
};

// Values r3(1..n). Monotone step r3(k) in {r3(k-1), r3(k-1)+1} turns each
// length into a single decision search for one extra element.
inline std::vector<std::int64_t> r3_values_up_to(std::int64_t n) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(n) + 1, 0);
  if (n >= 1) r[1] = 1;
  for (std::int64_t k = 2; k <= n; ++k) {
    const std::int64_t prev = r[static_cast<std::size_t>(k - 1)];
    // provisional upper bound so cap[k] itself never prunes the search
    r[static_cast<std::size_t>(k)] = prev + 1;
    FreeSubsetSearch search(k, r);
    r[static_cast<std::size_t>(k)] = prev + (search.find(prev + 1, nullptr) ? 1 : 0);
  }
  return r;
}

}  // namespace detail

// Exact maximum 3AP-free subset of [N] by branch and bound, with the
// lexicographically least witness under ascending exploration.
inline R3Record exact_r3(std::int64_t n, const R3Options& opts = {}) {
  if (n < 1) throw std::invalid_argument("exact_r3: N must be positive");
  if (n > opts.n_max) {
    throw std::invalid_argument("exact_r3: N=" + std::to_string(n) + " exceeds the exact-search bound " +
                                std::to_string(opts.n_max) +
                                "; use a cache or a construction for larger N");
  }
  const auto values = detail::r3_values_up_to(n);
  const std::int64_t value = values[static_cast<std::size_t>(n)];
  std::vector<std::int64_t> witness_elems;
  detail::FreeSubsetSearch search(n, values);
  if (!search.find(value, &witness_elems)) {
    throw std::logic_error("exact_r3: witness search failed after value search succeeded");
  }
  return R3Record{n, value, IntervalSet::of(n, witness_elems), "exact"};
}

// All records for N = 1..n in one pass (the per-length searches share the
// value table).
inline std::vector<R3Record> exact_r3_table(std::int64_t n, const R3Options& opts = {}) {
  if (n < 1) throw std::invalid_argument("exact_r3_table: N must be positive");
  if (n > opts.n_max) {
    throw std::invalid_argument("exact_r3_table: N exceeds the exact-search bound");
  }
  const auto values = detail::r3_values_up_to(n);
  std::vector<R3Record> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    std::vector<std::int64_t> w;
    detail::FreeSubsetSearch search(k, values);
    search.find(values[static_cast<std::size_t>(k)], &w);
    out.push_back(R3Record{k, values[static_cast<std::size_t>(k)], IntervalSet::of(k, w), "exact"});
  }
  return out;
}

}  // namespace ap3
