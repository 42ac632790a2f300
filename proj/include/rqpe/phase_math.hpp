#pragma once

#include <complex>
#include <numbers>

#include "rqpe/exactmath.hpp"

namespace rqpe {

/// exp(i*pi*r), with r reduced exactly modulo 2 first; quarter turns are exact.
inline std::complex<double> unit_phase(const Rational& r) {
  const Rational t = r.mod(2);
  if (t == Rational(0)) return {1.0, 0.0};
  if (t == Rational(1, 2)) return {0.0, 1.0};
  if (t == Rational(1)) return {-1.0, 0.0};
  if (t == Rational(3, 2)) return {0.0, -1.0};
  const double angle = std::numbers::pi * t.to_double();
  return {std::cos(angle), std::sin(angle)};
}

/// sin^2(pi*r/2): probability of measuring 1 on a line whose phase is pi*r.
inline double prob_one(const Rational& r) {
  const Rational t = r.mod(2);
  if (t == Rational(0)) return 0.0;
  if (t == Rational(1)) return 1.0;
  if (t == Rational(1, 2) || t == Rational(3, 2)) return 0.5;
  const double s = std::sin(std::numbers::pi * t.to_double() / 2.0);
  return s * s;
}

}  // namespace rqpe
