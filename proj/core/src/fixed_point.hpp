#pragma once

#include "ietflow/numeric.hpp"

#include <cmath>

namespace ietflow::detail {

// Points of R / Z scaled by 2^128; addition wraps exactly like the circle.
using Fixed = unsigned __int128;

inline Fixed to_fixed(const Rational& u) {
  Rational v = u - Rational(floor(u));
  Integer scaled = (boost::multiprecision::numerator(v) << 128) / boost::multiprecision::denominator(v);
  Integer mask = (Integer(1) << 64) - 1;
  auto lo = static_cast<unsigned long long>((scaled & mask).convert_to<unsigned long long>());
  auto hi = static_cast<unsigned long long>((scaled >> 64).convert_to<unsigned long long>());
  return (static_cast<Fixed>(hi) << 64) | lo;
}

inline long double from_fixed(Fixed x) {
  auto hi = static_cast<unsigned long long>(x >> 64);
  auto lo = static_cast<unsigned long long>(x);
  return std::ldexp(static_cast<long double>(hi), -64) + std::ldexp(static_cast<long double>(lo), -128);
}

} // namespace ietflow::detail
