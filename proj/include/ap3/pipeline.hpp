#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/extremal.hpp"
#include "ap3/field.hpp"
#include "ap3/spectral.hpp"
#include "ap3/varnavides.hpp"

namespace ap3 {

namespace detail {

// Largest integer t with t^(k+1) <= p^k. Both sides of the dilation bound
// reduce to it: a phase numerator m satisfies m/p <= p^(-1/(k+1)) iff
// m <= t, and the scan ceiling floor(p^(k/(k+1))) equals t as well, so the
// whole search stays in exact integer arithmetic.
inline std::int64_t power_root_bound(std::int64_t p, std::int64_t k) {
  const BigInt target = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k));
  std::int64_t lo = 1, hi = p;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    const BigInt powed = boost::multiprecision::pow(BigInt(mid), static_cast<unsigned>(k + 1));
    if (powed <= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace detail

struct DilationResult {
  std::int64_t x = 1;
  double delta = 0;            // p^(-1/(|R|+1))
  double xmax = 0;             // p^(1 - 1/(|R|+1))
  std::int64_t phase_bound = 0;  // floor(p^(|R|/(|R|+1))), the exact form of both bounds
  bool degenerate = false;     // R was empty; constraints vacuous, range empty
};

// Smallest x in [1, floor(p^(1-1/(|R|+1)))] with ||x r / p|| <= p^(-1/(|R|+1))
// for every r in R, by exhaustive scan. Pigeonhole guarantees a hit for
// nonempty R; exhaustion is a hard error.
inline DilationResult find_dilate(const LargeSpectrum& r_set, const PrimeContext& ctx) {
  const std::int64_t p = ctx.p;
  DilationResult out;
  const std::int64_t k = r_set.size();
  if (k == 0) {
    out.x = 1;
    out.delta = 1.0 / static_cast<double>(p);
    out.xmax = 1.0;
    out.phase_bound = 0;
    out.degenerate = true;
    return out;
  }
  const std::int64_t bound = detail::power_root_bound(p, k);
  out.delta = std::pow(static_cast<double>(p), -1.0 / static_cast<double>(k + 1));
  out.xmax = std::pow(static_cast<double>(p), static_cast<double>(k) / static_cast<double>(k + 1));
  out.phase_bound = bound;
  for (std::int64_t x = 1; x <= bound; ++x) {
    bool ok = true;
    for (const auto r : r_set.members) {
      const std::int64_t mr = (x * r) % p;
      const std::int64_t numer = std::min(mr, p - mr);
      if (numer > bound) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.x = x;
      return out;
    }
  }
  throw std::runtime_error("find_dilate: scan exhausted with nonempty R; arithmetic bug");
}

// g(n) = (f(n) + f(n-x) + f(n-2x)) / 3, the convolution of f with the
// normalized indicator of {0, x, 2x}. Counts stay integral with scale 1/3.
inline CyclicFunction convolve_with_progression(const CyclicFunction& f, std::int64_t x) {
  if (!f.is_indicator()) {
    throw std::invalid_argument("convolve_with_progression: f must be a 0/1 indicator");
  }
  const std::int64_t p = f.ctx.p;
  if (x <= 0 || x >= p) throw std::invalid_argument("convolve_with_progression: need 0 < x < p");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
  for (std::int64_t n = 0; n < p; ++n) {
    const std::int64_t n1 = (n - x % p + p) % p;
    const std::int64_t n2 = (n - 2 * x % p + 2 * p) % p;
    counts[static_cast<std::size_t>(n)] = f.counts[static_cast<std::size_t>(n)] +
                                          f.counts[static_cast<std::size_t>(n1)] +
                                          f.counts[static_cast<std::size_t>(n2)];
  }
  return CyclicFunction(f.ctx, std::move(counts), Rational(1, 3));
}

struct SupportRestriction {
  std::vector<std::int64_t> support;  // T, residues with g > 0, ascending
  IntervalSet restricted;             // T' = T ∩ [N]
};

// T = supp g and its restriction to [N]. Requires N + 2x < p so the three
// translates of [1, N] stay literal integer ranges; wraparound would break
// the containment T ⊆ [1, N + 2x] and is a hard abort.
inline SupportRestriction support_and_restrict(const CyclicFunction& g, std::int64_t x) {
  const std::int64_t p = g.ctx.p;
  const std::int64_t n_len = g.ctx.N;
  if (n_len + 2 * x >= p) {
    throw std::runtime_error("support_and_restrict: N + 2x >= p, translates wrap around");
  }
  SupportRestriction out{g.support(), IntervalSet(n_len)};
  for (const auto t : out.support) {
    if (t < 1 || t > n_len + 2 * x) {
      throw std::logic_error("support_and_restrict: support escaped [1, N + 2x]");
    }
    if (t <= n_len) out.restricted.insert(t);
  }
  const std::int64_t dropped =
      static_cast<std::int64_t>(out.support.size()) - out.restricted.size();
  if (dropped > 2 * x) {
    throw std::logic_error("support_and_restrict: more than 2x elements dropped");
  }
  return out;
}

enum class ThetaMode { kAsymptotic, kHalfDensity, kExplicit };

inline std::string theta_mode_name(ThetaMode m) {
  switch (m) {
    case ThetaMode::kAsymptotic: return "paper";
    case ThetaMode::kHalfDensity: return "half-density";
    case ThetaMode::kExplicit: return "explicit";
  }
  return "?";
}

struct PipelineConfig {
  ThetaMode theta_mode = ThetaMode::kAsymptotic;
  double theta = 0;              // used when theta_mode == kExplicit
  std::int64_t block_length = 0;  // Varnavides M; 0 picks the default
  R3Options r3_options{};
};

// Named checks of the inequality chain. Every one is a theorem for valid
// input; a false verdict is reported, never silently dropped.
struct PipelineVerdicts {
  bool a_spectrum_size = false;   // |R| <= E|f|^2 / theta^2
  bool b_dilation_phases = false;  // ||x r / p|| <= delta on R
  bool c_transform_gap = false;   // max_r |fhat - ghat| <= max(2 pi delta, 2 theta)
  bool d_lambda_gap = false;      // |L(f) - L(g)| <= 3 max_r |fhat - ghat|
  bool e_lambda_free = false;     // L(f) = |S| / p^2 exactly
  bool f_enlargement = false;     // g <= 2/3, |T| >= ceil(3|S|/2), L(T) <= 27 L(g), L(T') <= L(T)
  bool g_varnavides = false;      // lower bound at |T'| <= T3(T')

  bool all() const {
    return a_spectrum_size && b_dilation_phases && c_transform_gap && d_lambda_gap &&
           e_lambda_free && f_enlargement && g_varnavides;
  }

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    if (!a_spectrum_size) out.push_back("a_spectrum_size");
    if (!b_dilation_phases) out.push_back("b_dilation_phases");
    if (!c_transform_gap) out.push_back("c_transform_gap");
    if (!d_lambda_gap) out.push_back("d_lambda_gap");
    if (!e_lambda_free) out.push_back("e_lambda_free");
    if (!f_enlargement) out.push_back("f_enlargement");
    if (!g_varnavides) out.push_back("g_varnavides");
    return out;
  }
};

struct PipelineTrace {
  PrimeContext ctx;
  IntervalSet source_set;  // S
  ThetaMode theta_mode = ThetaMode::kAsymptotic;
  double theta = 0;

  double spectrum_mean = 0;         // fhat(0)
  double spectrum_max_offzero = 0;  // max_{r != 0} |fhat(r)|
  std::vector<std::int64_t> large_spectrum_members;  // R
  DilationResult dilation;

  CyclicFunction convolved;            // g, scale 1/3
  std::vector<std::int64_t> support;   // T
  IntervalSet restricted;              // T'

  std::int64_t source_size = 0;      // |S|
  std::int64_t support_size = 0;     // |T|
  std::int64_t restricted_size = 0;  // |T'|
  Rational lambda_source;            // L(f)
  Rational lambda_convolved;         // L(g)
  Rational lambda_support;           // L(T)
  Rational lambda_restricted;        // L(T')
  double max_transform_gap = 0;      // max_r |fhat(r) - ghat(r)|

  std::int64_t block_length = 0;  // M, 0 when no valid M exists (N < 3)
  std::int64_t r3_block = 0;      // r3(M)
  Rational varnavides_bound;      // lemma bound at (|T'|, N, M, r3(M))
  std::int64_t t3_restricted = 0;  // T3(T')

  PipelineVerdicts verdicts;
  bool degenerate = false;

  // Recorded for reporting only; the asymptotic comparison carries an
  // unspecified constant and is never asserted.
  Rational final_lhs_density;        // |S| / N
  Rational final_rhs_main;           // 3 r3(M) / 4M
  double final_rhs_error_scale = 0;  // (ln ln N / ln N)^(1/4)
  double enlargement_ratio = 0;      // |T'| / |S|
};

// The full density-increment run: embed, transform, pick the dilate,
// convolve, take the positivity set and its restriction, and verify the
// inequality chain with explicit constants.
inline PipelineTrace run_pipeline(const IntervalSet& s, const PipelineConfig& cfg = {}) {
  if (!is_3ap_free(s)) {
    throw std::invalid_argument("run_pipeline: source set has a three-term progression");
  }
  const PrimeContext ctx = find_bertrand_prime(s.interval_length());
  const std::int64_t p = ctx.p;
  const std::int64_t n_len = ctx.N;

  PipelineTrace tr{.ctx = ctx,
                   .source_set = s,
                   .theta_mode = cfg.theta_mode,
                   .convolved = CyclicFunction::zero(ctx),
                   .restricted = IntervalSet(n_len)};
  tr.source_size = s.size();

  const CyclicFunction f = embed(s, ctx);
  const Spectrum fhat = dft(f);
  tr.spectrum_mean = fhat.mean();
  for (std::int64_t r = 1; r < p; ++r) {
    tr.spectrum_max_offzero = std::max(tr.spectrum_max_offzero,
                                       std::abs(fhat.coeffs[static_cast<std::size_t>(r)]));
  }

  switch (cfg.theta_mode) {
    case ThetaMode::kAsymptotic:
      tr.theta = default_threshold(p);
      break;
    case ThetaMode::kHalfDensity:
      tr.theta = static_cast<double>(tr.source_size) / (2.0 * static_cast<double>(p));
      break;
    case ThetaMode::kExplicit:
      tr.theta = cfg.theta;
      break;
  }
  if (!(tr.theta > 0)) {
    throw std::invalid_argument("run_pipeline: threshold must be positive");
  }

  const LargeSpectrum r_set = large_spectrum(fhat, tr.theta);
  tr.large_spectrum_members = r_set.members;
  tr.dilation = find_dilate(r_set, ctx);
  tr.degenerate = tr.dilation.degenerate;

  // In the asymptotic-threshold regime the dilation bounds must collapse to
  // 1/log p; anything else is a bug, not a data-dependent failure.
  if (cfg.theta_mode == ThetaMode::kAsymptotic && !tr.degenerate) {
    const double lp = std::log(static_cast<double>(p));
    if (static_cast<double>(r_set.size()) <= lp / (2.0 * std::log(lp))) {
      if (tr.dilation.delta > 1.0 / lp || tr.dilation.xmax > static_cast<double>(p) / lp) {
        throw std::logic_error("run_pipeline: dilation bounds outside the 1/log p regime");
      }
    }
  }

  const CyclicFunction g = convolve_with_progression(f, tr.dilation.x);
  tr.convolved = g;
  const Spectrum ghat = dft(g);
  for (std::int64_t r = 0; r < p; ++r) {
    tr.max_transform_gap = std::max(tr.max_transform_gap,
                                    std::abs(fhat.coeffs[static_cast<std::size_t>(r)] -
                                             ghat.coeffs[static_cast<std::size_t>(r)]));
  }

  SupportRestriction sup = support_and_restrict(g, tr.dilation.x);
  tr.support = std::move(sup.support);
  tr.restricted = std::move(sup.restricted);
  tr.support_size = static_cast<std::int64_t>(tr.support.size());
  tr.restricted_size = tr.restricted.size();

  tr.lambda_source = lambda_direct(f);
  tr.lambda_convolved = lambda_direct(g);
  {
    std::vector<std::int64_t> t_counts(static_cast<std::size_t>(p), 0);
    for (const auto t : tr.support) t_counts[static_cast<std::size_t>(t)] = 1;
    tr.lambda_support = lambda_direct(CyclicFunction(ctx, std::move(t_counts), 1));
  }
  tr.lambda_restricted = lambda_direct(embed(tr.restricted, ctx));
  tr.t3_restricted = count_3aps(tr.restricted);

  // Varnavides block length: floor((ln p / ln ln p)^(1/16)) is below 3 at
  // this scale, so 3 is the working default; it must not exceed N.
  if (cfg.block_length != 0) {
    if (cfg.block_length < 3 || cfg.block_length > n_len) {
      throw std::invalid_argument("run_pipeline: block length must be in [3, N]");
    }
    tr.block_length = cfg.block_length;
  } else {
    const double lp = std::log(static_cast<double>(p));
    const std::int64_t auto_m = static_cast<std::int64_t>(
        std::floor(std::pow(lp / std::log(lp), 1.0 / 16.0)));
    tr.block_length = std::max<std::int64_t>(3, auto_m);
    if (tr.block_length > n_len) tr.block_length = 0;  // no admissible M
  }

  if (tr.block_length >= 3) {
    tr.r3_block = exact_r3(tr.block_length, cfg.r3_options).value;
    tr.varnavides_bound =
        varnavides_lower_bound(tr.restricted_size, n_len, tr.block_length, tr.r3_block);
    tr.final_rhs_main = Rational(3 * tr.r3_block, 4 * tr.block_length);
  }

  // --- verdicts -----------------------------------------------------------
  const double mean_square = static_cast<double>(tr.source_size) / static_cast<double>(p);
  tr.verdicts.a_spectrum_size =
      static_cast<double>(r_set.size()) <= mean_square / (tr.theta * tr.theta);

  tr.verdicts.b_dilation_phases = true;
  for (const auto r : r_set.members) {
    const std::int64_t mr = (tr.dilation.x * r) % p;
    if (std::min(mr, p - mr) > tr.dilation.phase_bound) tr.verdicts.b_dilation_phases = false;
  }

  tr.verdicts.c_transform_gap =
      tr.max_transform_gap <= std::max(2.0 * std::numbers::pi * tr.dilation.delta, 2.0 * tr.theta);

  const Rational lambda_gap = tr.lambda_source >= tr.lambda_convolved
                                  ? tr.lambda_source - tr.lambda_convolved
                                  : tr.lambda_convolved - tr.lambda_source;
  tr.verdicts.d_lambda_gap = to_double(lambda_gap) <= 3.0 * tr.max_transform_gap;

  tr.verdicts.e_lambda_free = tr.lambda_source == Rational(tr.source_size) / (Rational(p) * p);

  tr.verdicts.f_enlargement = g.max_count() <= 2 && 2 * tr.support_size >= 3 * tr.source_size &&
                              tr.lambda_support <= Rational(27) * tr.lambda_convolved &&
                              tr.lambda_restricted <= tr.lambda_support;

  tr.verdicts.g_varnavides =
      tr.block_length < 3 || tr.varnavides_bound <= Rational(tr.t3_restricted);

  // --- recorded comparison, never asserted --------------------------------
  tr.final_lhs_density = Rational(tr.source_size, n_len);
  {
    const double ln_n = std::log(static_cast<double>(n_len));
    if (std::log(ln_n) > 0) {
      tr.final_rhs_error_scale = std::pow(std::log(ln_n) / ln_n, 0.25);
    }
  }
  if (tr.source_size > 0) {
    tr.enlargement_ratio =
        static_cast<double>(tr.restricted_size) / static_cast<double>(tr.source_size);
  }
  return tr;
}

}  // namespace ap3
