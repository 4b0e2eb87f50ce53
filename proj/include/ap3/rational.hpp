#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace ap3 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt bigint_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<std::uint64_t>(u >> 64);
  BigInt out = (hi << 64) + static_cast<std::uint64_t>(u);
  return neg ? -out : out;
}

// Narrowing helper for serialization; trace-scale rationals fit comfortably.
inline std::int64_t to_i64(const BigInt& v) {
  if (v > (std::numeric_limits<std::int64_t>::max)() ||
      v < (std::numeric_limits<std::int64_t>::min)()) {
    throw std::overflow_error("rational component exceeds 64-bit range");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace ap3
