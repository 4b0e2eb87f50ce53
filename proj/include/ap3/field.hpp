#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/interval_set.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Modulus for embedding [N] into F_p without creating new progressions:
// p > 2N keeps x + y = 2z free of wraparound solutions.
struct PrimeContext {
  std::int64_t p = 0;
  std::int64_t N = 0;

  PrimeContext(std::int64_t prime, std::int64_t interval_length)
      : p(prime), N(interval_length) {
    if (N < 1) throw std::invalid_argument("PrimeContext: N must be positive");
    if (!is_prime(p) || p == 2) throw std::invalid_argument("PrimeContext: p must be an odd prime");
    if (!(2 * N < p && p < 4 * N)) {
      throw std::invalid_argument("PrimeContext: need 2N < p < 4N, got p=" + std::to_string(p) +
                                  ", N=" + std::to_string(N));
    }
  }

  // Context for a bare prime, when no source interval is in play.
  static PrimeContext for_prime(std::int64_t p) { return PrimeContext(p, (p - 1) / 2); }

  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;
};

// Smallest prime in (2N, 4N). One always exists for N >= 2; an exhausted
// scan means the primality test is broken.
inline PrimeContext find_bertrand_prime(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("find_bertrand_prime: N must be at least 2");
  for (std::int64_t p = 2 * n + 1; p < 4 * n; ++p) {
    if (is_prime(p)) return PrimeContext(p, n);
  }
  throw std::logic_error("find_bertrand_prime: no prime in (2N, 4N)");
}

// Distance from t to the nearest integer, in [0, 1/2]. Exact.
inline Rational torus_distance(const Rational& t) {
  const BigInt num = numerator(t);
  const BigInt den = denominator(t);  // den > 0 for cpp_rational
  BigInt fl = num / den;
  if (num < 0 && fl * den != num) --fl;  // floor for negative values
  const Rational frac = t - Rational(fl);
  const Rational comp = Rational(1) - frac;
  return frac <= comp ? frac : comp;
}

// Function F_p -> Q with exact values count[n] * scale. Keeping integer
// counts makes supports and pointwise bounds exact; indicators use scale 1
// and the three-point convolution uses scale 1/3.
struct CyclicFunction {
  PrimeContext ctx;
  std::vector<std::int64_t> counts;
  Rational scale = 1;

  CyclicFunction(PrimeContext c, std::vector<std::int64_t> values, Rational s)
      : ctx(c), counts(std::move(values)), scale(std::move(s)) {
    if (counts.size() != static_cast<std::size_t>(ctx.p)) {
      throw std::invalid_argument("CyclicFunction: counts length must equal p");
    }
    for (auto v : counts) {
      if (v < 0) throw std::invalid_argument("CyclicFunction: counts must be nonnegative");
    }
  }

  static CyclicFunction zero(const PrimeContext& c) {
    return CyclicFunction(c, std::vector<std::int64_t>(static_cast<std::size_t>(c.p), 0), 1);
  }

  Rational value(std::int64_t n) const { return Rational(counts.at(static_cast<std::size_t>(n))) * scale; }

  bool is_indicator() const {
    if (scale != 1) return false;
    for (auto v : counts) {
      if (v > 1) return false;
    }
    return true;
  }

  std::vector<std::int64_t> support() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 0; n < ctx.p; ++n) {
      if (counts[static_cast<std::size_t>(n)] != 0) out.push_back(n);
    }
    return out;
  }

  std::int64_t max_count() const {
    std::int64_t m = 0;
    for (auto v : counts) m = v > m ? v : m;
    return m;
  }

  std::int64_t total_count() const {
    std::int64_t t = 0;
    for (auto v : counts) t += v;
    return t;
  }

  // E_n f(n)^2, exact.
  Rational mean_square() const {
    BigInt acc = 0;
    for (auto v : counts) acc += BigInt(v) * v;
    return Rational(acc) * scale * scale / ctx.p;
  }
};

// Indicator of S placed on residues 1..N of F_p.
inline CyclicFunction embed(const IntervalSet& s, const PrimeContext& ctx) {
  if (s.interval_length() != ctx.N) {
    throw std::invalid_argument("embed: set interval length differs from context N");
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ctx.p), 0);
  for (auto a : s.elements()) counts[static_cast<std::size_t>(a)] = 1;
  return CyclicFunction(ctx, std::move(counts), 1);
}

}  // namespace ap3
