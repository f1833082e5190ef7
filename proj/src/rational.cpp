#include "hypflow/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

#include "hypflow/error.hpp"

namespace hypflow {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw NumericalError("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw NumericalError("rational overflow");
  return out;
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParameterError("cannot parse number '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational& Rational::operator+=(const Rational& o) {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t lhs = checked_mul(num_, o.den_ / g);
  const std::int64_t rhs = checked_mul(o.num_, den_ / g);
  *this = Rational(checked_add(lhs, rhs), checked_mul(den_, o.den_ / g));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first to keep intermediates small.
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const std::int64_t a = g1 == 0 ? num_ : num_ / g1;
  const std::int64_t d = g1 == 0 ? o.den_ : o.den_ / g1;
  const std::int64_t c = g2 == 0 ? o.num_ : o.num_ / g2;
  const std::int64_t b = g2 == 0 ? den_ : den_ / g2;
  *this = Rational(checked_mul(a, c), checked_mul(b, d));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw ParameterError("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __extension__ using Wide = __int128;
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if (frac_part.size() > 17 || (int_part.empty() && frac_part.empty()))
      throw ParameterError("cannot parse number '" + std::string(whole) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den = checked_mul(den, 10);
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    if (ip < 0 || fp < 0) throw ParameterError("cannot parse number '" + std::string(whole) + "'");
    const std::int64_t num = checked_add(checked_mul(ip, den), fp);
    return Rational(negative ? -num : num, den);
  }
  return Rational(parse_int(text, whole));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational Exponent::value() const {
  if (!value_) throw ParameterError("exponent is infinite");
  return *value_;
}

Rational Exponent::reciprocal() const {
  if (!value_) return Rational(0);
  return Rational(1) / *value_;
}

Exponent Exponent::conjugate() const {
  if (!value_) return Exponent(1);
  if (*value_ == Rational(1)) return infinity();
  return Exponent(*value_ / (*value_ - Rational(1)));
}

double Exponent::to_double() const {
  return value_ ? value_->to_double() : std::numeric_limits<double>::infinity();
}

std::string Exponent::str() const { return value_ ? value_->str() : "inf"; }

std::partial_ordering operator<=>(const Exponent& a, const Exponent& b) {
  if (a.is_infinite() && b.is_infinite()) return std::partial_ordering::equivalent;
  if (a.is_infinite()) return std::partial_ordering::greater;
  if (b.is_infinite()) return std::partial_ordering::less;
  return *a.value_ <=> *b.value_;
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  return Exponent(Rational::parse(text));
}

std::ostream& operator<<(std::ostream& os, const Exponent& p) { return os << p.str(); }

}  // namespace hypflow
