#include "rqpe/exactmath.hpp"

#include <cmath>
#include <ostream>

#include "rqpe/errors.hpp"

namespace rqpe {
namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

Integer parse_integer(std::string_view text, std::string_view whole) {
  text = trim(text);
  std::size_t digits_start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (digits_start == text.size()) {
    throw InputError("not a rational: '" + std::string(whole) + "'");
  }
  for (std::size_t i = digits_start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InputError("not a rational: '" + std::string(whole) + "'");
    }
  }
  Integer value(std::string(text.substr(digits_start)));
  return text[0] == '-' ? Integer(-value) : value;
}

// Exact value of a finite double.
boost::multiprecision::cpp_rational exact_value(double value) {
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  boost::multiprecision::cpp_rational result{Integer(scaled)};
  if (exponent >= 0) {
    result *= Integer(1) << exponent;
  } else {
    result /= Integer(1) << -exponent;
  }
  return result;
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  if (denominator < 0) {
    value_ = boost::multiprecision::cpp_rational(-numerator, -denominator);
  } else {
    value_ = boost::multiprecision::cpp_rational(numerator, denominator);
  }
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

double Rational::to_double() const { return value_.convert_to<double>(); }

Integer Rational::floor() const {
  const Integer num = numerator();
  const Integer den = denominator();
  Integer quotient = num / den;
  if (num < 0 && quotient * den != num) --quotient;
  return quotient;
}

Rational Rational::mod(const Rational& modulus) const {
  if (modulus <= Rational(0)) throw InputError("modulus must be positive");
  return *this - modulus * Rational((*this / modulus).floor());
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

Rational Rational::operator-() const {
  Rational result;
  result.value_ = -value_;
  return result;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.value_ == 0) throw InputError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& out, const Rational& value) { return out << value.to_string(); }

Integer gcd_set(std::span<const Integer> values) {
  Integer result = 0;
  for (const auto& v : values) {
    if (v < 0) throw InputError("gcd_set expects non-negative integers");
    result = boost::multiprecision::gcd(result, v);
  }
  if (result == 0) throw InputError("degenerate set");
  return result;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

int floor_log2(const Integer& value) {
  if (value < 1) throw InputError("floor_log2 of non-positive value");
  return static_cast<int>(boost::multiprecision::msb(value));
}

int ceil_log2(const Integer& value) {
  const int floor = floor_log2(value);
  return (Integer(1) << floor) == value ? floor : floor + 1;
}

Rational rational_from_float(double value, double tolerance) {
  if (!std::isfinite(value)) throw InputError("rational_from_float: non-finite value");
  if (!(tolerance > 0) || !std::isfinite(tolerance)) {
    throw InputError("rational_from_float: tolerance must be positive");
  }
  using boost::multiprecision::cpp_rational;
  const cpp_rational target = exact_value(value);
  const cpp_rational tol = exact_value(tolerance);

  // Convergents h/k of the continued fraction of `target`.
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  cpp_rational rest = target;
  while (true) {
    const Integer a = Rational(boost::multiprecision::numerator(rest),
                               boost::multiprecision::denominator(rest))
                          .floor();
    const Integer h = a * h_prev + h_prev2;
    const Integer k = a * k_prev + k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const cpp_rational convergent(h, k);
    if (boost::multiprecision::abs(convergent - target) <= tol) return Rational(h, k);
    const cpp_rational frac = rest - cpp_rational(a);
    if (frac == 0) return Rational(h, k);  // unreachable: exact convergent is within tolerance
    rest = 1 / frac;
  }
}

}  // namespace rqpe
