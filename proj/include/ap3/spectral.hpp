#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ap3/field.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

// Fourier coefficients under the averaged-sum normalization with positive
// exponent: coeffs[r] = (1/p) sum_x f(x) e^{2 pi i r x / p}. Every identity
// downstream assumes exactly this convention.
struct Spectrum {
  PrimeContext ctx;
  std::vector<std::complex<double>> coeffs;

  double mean() const { return coeffs[0].real(); }

  double l2() const {
    double acc = 0;
    for (const auto& c : coeffs) acc += std::norm(c);
    return acc;
  }
};

// Direct evaluation over the support of f, with extended-precision
// accumulation. O(p * |supp f|).
inline Spectrum dft(const CyclicFunction& f) {
  const std::int64_t p = f.ctx.p;
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(p));
  for (std::int64_t k = 0; k < p; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    roots[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
  }

  const auto supp = f.support();
  std::vector<std::int64_t> phase(supp.size(), 0);  // r*x mod p, advanced per r
  std::vector<double> weight(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    weight[i] = static_cast<double>(f.counts[static_cast<std::size_t>(supp[i])]);
  }

  const long double factor = f.scale.convert_to<long double>() / static_cast<long double>(p);
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(p));
  for (std::int64_t r = 0; r < p; ++r) {
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < supp.size(); ++i) {
      const auto& w = roots[static_cast<std::size_t>(phase[i])];
      re += weight[i] * w.real();
      im += weight[i] * w.imag();
      phase[i] += supp[i];
      if (phase[i] >= p) phase[i] -= p;
    }
    coeffs[static_cast<std::size_t>(r)] = {static_cast<double>(re * factor),
                                           static_cast<double>(im * factor)};
  }
  return Spectrum{f.ctx, std::move(coeffs)};
}

// Average of f over all progressions (x, x+d, x+2d), d = 0 included:
// p^{-2} sum_{x,d} f(x) f(x+d) f(x+2d). Exact. The pair (x, y = x+d) runs
// over F_p^2, with third point 2y - x.
inline Rational lambda_direct(const CyclicFunction& f) {
  const std::int64_t p = f.ctx.p;
  const auto supp = f.support();
  __int128 acc = 0;
  for (const auto x : supp) {
    const __int128 cx = f.counts[static_cast<std::size_t>(x)];
    for (const auto y : supp) {
      std::int64_t third = 2 * y - x;
      third %= p;
      if (third < 0) third += p;
      const std::int64_t ct = f.counts[static_cast<std::size_t>(third)];
      if (ct != 0) acc += cx * f.counts[static_cast<std::size_t>(y)] * ct;
    }
  }
  Rational cube = f.scale * f.scale * f.scale;
  return Rational(bigint_from_i128(acc)) * cube / (Rational(p) * p);
}

// Same average through the transform: sum_r fhat(r)^2 fhat(-2r). For a
// real-valued f the imaginary part must cancel; anything above 1e-10 means
// the transform is broken.
inline double lambda_spectral(const Spectrum& spec) {
  const std::int64_t p = spec.ctx.p;
  long double re = 0, im = 0;
  for (std::int64_t r = 0; r < p; ++r) {
    const std::int64_t neg2r = ((p - 2 * r % p) % p + p) % p;
    const std::complex<double> term =
        spec.coeffs[static_cast<std::size_t>(r)] * spec.coeffs[static_cast<std::size_t>(r)] *
        spec.coeffs[static_cast<std::size_t>(neg2r)];
    re += term.real();
    im += term.imag();
  }
  if (std::abs(static_cast<double>(im)) > 1e-10) {
    throw std::logic_error("lambda_spectral: imaginary residue above tolerance");
  }
  return static_cast<double>(re);
}

struct LargeSpectrum {
  double threshold = 0;
  std::vector<std::int64_t> members;  // ascending

  std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
};

// Residues with |fhat(r)| >= theta. The boundary is decided by >= on the
// computed magnitude; no epsilon slack.
inline LargeSpectrum large_spectrum(const Spectrum& spec, double theta) {
  if (!(theta > 0)) throw std::invalid_argument("large_spectrum: threshold must be positive");
  LargeSpectrum out;
  out.threshold = theta;
  for (std::int64_t r = 0; r < spec.ctx.p; ++r) {
    if (std::abs(spec.coeffs[static_cast<std::size_t>(r)]) >= theta) out.members.push_back(r);
  }
  return out;
}

// Default threshold sqrt(2 ln ln p / ln p), natural logarithms.
inline double default_threshold(std::int64_t p) {
  const double lp = std::log(static_cast<double>(p));
  if (!(std::log(lp) > 0)) {
    throw std::domain_error("default_threshold: p too small for log log p > 0");
  }
  return std::sqrt(2.0 * std::log(lp) / lp);
}

}  // namespace ap3
