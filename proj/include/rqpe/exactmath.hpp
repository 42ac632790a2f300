#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rqpe {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive denominator.
///
/// Phases throughout the library are carried as Rationals in units of pi, so
/// `Rational(21, 64)` stands for the angle 21*pi/64.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& numerator, const Integer& denominator);

  /// Parses "p/q", "p" or "-p/q". Whitespace around the tokens is ignored.
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;

  bool is_integer() const { return denominator() == 1; }
  double to_double() const;
  Integer floor() const;

  /// Representative of this value modulo `modulus` in [0, modulus). Requires modulus > 0.
  Rational mod(const Rational& modulus) const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& out, const Rational& value);

/// Greatest common divisor of a set of non-negative integers, with gcd(0, a) = a.
/// Throws InputError("degenerate set") when the set is empty or all zero.
Integer gcd_set(std::span<const Integer> values);

Integer lcm(const Integer& a, const Integer& b);

/// floor(log2(value)) for value >= 1.
int floor_log2(const Integer& value);

/// ceil(log2(value)) for value >= 1.
int ceil_log2(const Integer& value);

/// Continued-fraction recovery of a rational from a double: returns the first
/// convergent lying within `tolerance` of `value`. The double is expanded exactly,
/// so no rounding enters the expansion itself.
Rational rational_from_float(double value, double tolerance);

}  // namespace rqpe
