#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hypflow {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Arithmetic is
/// overflow-checked; an overflow throws NumericalError rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "26/9", or "3" when the denominator is 1.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Parses "3", "-2", "3/2" or "1.5". Decimal input is converted exactly
  /// (1.5 -> 3/2); exponent notation is rejected.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// An integrability exponent p in [1, inf] (or any rational), with an explicit
/// infinity. 1/p is exact for every value, including 1/inf = 0.
class Exponent {
 public:
  Exponent(Rational value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Exponent(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  static Exponent infinity() { return Exponent(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws ParameterError when infinite.
  Rational value() const;
  /// 1/p, exact; zero for p = inf.
  Rational reciprocal() const;
  /// Dual exponent p' = p/(p-1). 1 <-> inf.
  Exponent conjugate() const;
  double to_double() const;
  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  friend std::partial_ordering operator<=>(const Exponent& a, const Exponent& b);

  /// Accepts everything Rational::parse does plus "inf" / "infinity".
  static Exponent parse(std::string_view text);

 private:
  Exponent() = default;
  std::optional<Rational> value_;
};

std::ostream& operator<<(std::ostream& os, const Exponent& p);

}  // namespace hypflow
