#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hypflow/error.hpp"
#include "hypflow/gaps.hpp"
#include "hypflow/kato.hpp"
#include "oracles.hpp"

using namespace hypflow::kato;
using hypflow::Exponent;
using hypflow::Rational;

namespace {

// Gamma(1/2) Gamma(1/4) / Gamma(3/4), from tanh-sinh quadrature of
// tau^{-1/2} (1 - tau)^{-3/4} on [0, 1].
constexpr double kBetaHalfQuarter = 5.2441151085842;

Exponent random_exponent(oracle::Gen& gen, std::int64_t lo_num, std::int64_t hi_num) {
  const std::int64_t den = gen.integer(1, 12);
  return Exponent(Rational(gen.integer(lo_num * den, hi_num * den), den));
}

}  // namespace

TEST_CASE("exponents at the critical pair") {
  const KatoExponents e = exponents(3, 6);
  CHECK(e.beta == Rational(1, 4));
  CHECK(e.delta == Rational(3, 4));
  CHECK(e.scaling_exponent == Rational(0));
  CHECK(e.integral_class == IntegralClass::bounded);
  CHECK(e.admissible);
  CHECK_FALSE(e.pointwise_divergent);
}

TEST_CASE("exponents below the critical pair") {
  const KatoExponents e = exponents(2, 6);
  CHECK(e.beta == Rational(1, 2));
  CHECK(e.integral_class == IntegralClass::strictly_divergent);
  CHECK(e.pointwise_divergent);
  CHECK(exponents(Rational(5, 2), 6).integral_class == IntegralClass::uv_divergent);
  CHECK(exponents(3, 9).scaling_exponent == exponents(3, 6).scaling_exponent);
  CHECK_FALSE(exponents(2, 3).admissible);
  CHECK_FALSE(exponents(6, 4).admissible);
  CHECK_THROWS_AS(exponents(Rational(1, 2), 6), hypflow::ParameterError);
  for (IntegralClass c : {IntegralClass::bounded, IntegralClass::uv_divergent, IntegralClass::strictly_divergent})
    CHECK(parse_class(to_string(c)) == c);
}

TEST_CASE("property: q cancels in 1 - delta - beta") {
  oracle::Gen gen(51);
  int admissible = 0;
  while (admissible < 200) {
    const Exponent p = random_exponent(gen, 1, 20);
    const Exponent q = gen.integer(0, 9) == 0 ? Exponent::infinity() : random_exponent(gen, 3, 40);
    const KatoExponents e = exponents(p, q);
    if (!e.admissible) continue;
    ++admissible;
    CHECK(e.beta + e.delta == Rational(1, 2) + Rational(3, 2) * p.reciprocal());
    CHECK(Rational(1) - e.delta - e.beta == Rational(1, 2) - Rational(3, 2) * p.reciprocal());
    CHECK(Rational(1) - e.delta - e.beta == e.scaling_exponent);
    const bool nonneg = e.scaling_exponent >= Rational(0);
    CHECK(nonneg == (e.integral_class == IntegralClass::bounded));
    if (p <= Exponent(2)) CHECK(e.integral_class == IntegralClass::strictly_divergent);
    CHECK(e.pointwise_divergent == (e.beta >= Rational(1, 2) || e.delta >= Rational(1)));
    if (e.beta >= Rational(1, 2)) CHECK(p <= Exponent(3));
  }
}

TEST_CASE("log gamma and beta against independent references") {
  CHECK(beta_function(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  boost::math::quadrature::tanh_sinh<double> ts;
  const double quad = ts.integrate(
      [](double x, double xc) { return std::pow(x, -0.5) * std::pow(x > 0.5 ? xc : 1.0 - x, -0.75); }, 0.0, 1.0);
  CHECK(quad == doctest::Approx(kBetaHalfQuarter).epsilon(1e-11));
  CHECK(std::abs(beta_function(0.5, 0.25) - 5.2441) <= 1e-3);
  CHECK(beta_function(0.5, 0.25) == doctest::Approx(kBetaHalfQuarter).epsilon(1e-12));
  CHECK_THROWS_AS(beta_function(0.0, 1.0), hypflow::ParameterError);
  CHECK_THROWS_AS(beta_function(1.0, -0.5), hypflow::ParameterError);
  CHECK_THROWS_AS(log_gamma(0.0), hypflow::ParameterError);

  oracle::Gen gen(52);
  for (int i = 0; i < 500; ++i) {
    const double a = gen.uniform(1e-3, 10.0);
    const double b = gen.uniform(1e-3, 10.0);
    CHECK(beta_function(a, b) == doctest::Approx(oracle::beta(a, b)).epsilon(1e-12));
    CHECK(beta_function(a, b) == beta_function(b, a));
    CHECK(log_gamma(a) == doctest::Approx(std::lgamma(a)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("bounded case against direct tanh-sinh quadrature") {
  for (const auto& [p, q] : {std::pair<int, int>{3, 6}, {3, 9}, {4, 6}, {6, 12}}) {
    const KatoExponents e = exponents(p, q);
    for (double t : {0.1, 1.0, 10.0}) {
      const IntegralResult r = scaling_integral(t, p, q);
      REQUIRE_FALSE(r.divergent);
      const double ref = oracle::kato_integral(t, e.beta.to_double(), e.delta.to_double(), r.mu, r.gamma, r.alpha);
      CHECK(r.value == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("defaults: gamma is the bilinear gap at q/2 and alpha = mu gamma") {
  const IntegralResult r = scaling_integral(1.0, 3, 6);
  CHECK(r.gamma == doctest::Approx(26.0 / 9.0).epsilon(1e-15));
  CHECK(r.alpha == doctest::Approx(26.0 / 9.0).epsilon(1e-15));
  IntegralParams params;
  params.mu = 0.5;
  const IntegralResult h = scaling_integral(1.0, 3, 8, params);
  CHECK(h.gamma == doctest::Approx(hypflow::gaps::bilinear_gamma(4).to_double()));
  CHECK(h.alpha == doctest::Approx(0.5 * h.gamma));
}

TEST_CASE("majorisation by the Beta bound") {
  for (double t : {0.1, 1.0, 10.0}) {
    const IntegralResult r = scaling_integral(t, 3, 6);
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == doctest::Approx(kBetaHalfQuarter).epsilon(1e-12));
    CHECK(r.value <= *r.bound * (1.0 + 1e-6));
  }
  oracle::Gen gen(53);
  for (int i = 0; i < 40; ++i) {
    const Exponent p = random_exponent(gen, 3, 12);
    const Exponent q = random_exponent(gen, 4, 30);
    if (!exponents(p, q).admissible) continue;
    const double t = std::exp(gen.uniform(std::log(0.05), std::log(20.0)));
    const IntegralResult r = scaling_integral(t, p, q);
    REQUIRE(r.bound.has_value());
    CHECK(r.value <= *r.bound * (1.0 + 1e-6));
  }
}

TEST_CASE("without exponentials the integral is exactly the Beta value") {
  IntegralParams params;
  params.gamma = 0.0;
  params.alpha = 0.0;
  for (const auto& [p, q] : {std::pair<int, int>{3, 6}, {4, 5}, {6, 6}, {10, 20}}) {
    const KatoExponents e = exponents(p, q);
    for (double t : {0.3, 1.0, 7.0}) {
      const IntegralResult r = scaling_integral(t, p, q, params);
      const double exact = oracle::beta(1.0 - 2.0 * e.beta.to_double(), 1.0 - e.delta.to_double()) *
                           std::pow(t, e.scaling_exponent.to_double());
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
    }
  }
  // Also for 2 < p < 3, where the factor t^{scaling} blows up as t -> 0.
  const KatoExponents e = exponents(Rational(5, 2), 6);
  const IntegralResult r = scaling_integral(1e-4, Rational(5, 2), 6, params);
  CHECK(r.value == doctest::Approx(oracle::beta(1.0 - 2.0 * e.beta.to_double(), 1.0 - e.delta.to_double()) *
                                   std::pow(1e-4, -0.1))
                       .epsilon(1e-9));
}

TEST_CASE("strict divergence below p = 3's boundary") {
  const IntegralResult r = scaling_integral(1.0, 2, 6);
  CHECK(r.divergent);
  CHECK(std::isinf(r.value));
  CHECK_FALSE(r.bound.has_value());
  REQUIRE(r.trace.size() == 20);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].value > r.trace[i - 1].value);
    CHECK(r.trace[i].size > r.trace[i - 1].size);
  }
  CHECK(r.trace.back().value > 10.0 * kBetaHalfQuarter);
  // Logarithmic divergence: increments per unit log-cutoff settle to a constant.
  const auto& a = r.trace[r.trace.size() - 3];
  const auto& b = r.trace[r.trace.size() - 2];
  const auto& c = r.trace.back();
  const double slope1 = (b.value - a.value) / (b.size - a.size);
  const double slope2 = (c.value - b.value) / (c.size - b.size);
  CHECK(slope2 == doctest::Approx(slope1).epsilon(1e-3));
}

TEST_CASE("property: any fixed bound is exceeded within a logarithmic number of refinements") {
  const IntegralResult r = scaling_integral(1.0, 2, 6);
  for (double m : {1.0, 10.0, 100.0, 1e4}) {
    std::size_t level = 0;
    for (const auto& s : r.trace) {
      if (s.value > m) {
        level = s.level;
        break;
      }
    }
    CHECK(level > 0);
    CHECK(static_cast<double>(level) <= 3.0 + 2.0 * std::log2(m + 1.0));
  }
}

TEST_CASE("scaling integral validation") {
  CHECK_THROWS_AS(scaling_integral(0.0, 3, 6), hypflow::ParameterError);
  CHECK_THROWS_AS(scaling_integral(-1.0, 3, 6), hypflow::ParameterError);
}

TEST_CASE("short-time slopes for p = 5/2") {
  const QIndependenceReport r = q_independence_check(Rational(5, 2), {4, 6, 9});
  CHECK(r.expected_slope == doctest::Approx(-0.1).epsilon(1e-15));
  REQUIRE(r.entries.size() == 3);
  for (const auto& e : r.entries) {
    CHECK(std::abs(e.slope + 0.1) <= 0.01);
    CHECK(e.prefactor > 0.0);
    CHECK(std::isfinite(e.prefactor));
  }
  CHECK(r.max_spread <= 0.01);
  CHECK(r.pass);
}

TEST_CASE("short-time slope is blind to the gap") {
  QIndependenceOptions options;
  options.gammas = {0.0, 26.0 / 9.0, 100.0};
  const QIndependenceReport r = q_independence_check(Rational(5, 2), {4, 6, 9}, options);
  CHECK(r.entries.size() == 9);
  CHECK(r.max_gamma_spread <= 1e-3);
  CHECK(r.pass);
}

TEST_CASE("slope is flat at p = 3 and deterministic") {
  const QIndependenceReport r = q_independence_check(3, {4, 6, 9, 12});
  for (const auto& e : r.entries) CHECK(std::abs(e.slope) <= 0.01);
  const QIndependenceReport twice = q_independence_check(Rational(5, 2), {6, 6});
  REQUIRE(twice.entries.size() == 2);
  CHECK(twice.entries[0].slope == twice.entries[1].slope);
}

TEST_CASE("q-independence validation") {
  CHECK_THROWS_AS(q_independence_check(2, {6}), hypflow::ParameterError);
  CHECK_THROWS_AS(q_independence_check(Rational(5, 2), {3}), hypflow::ParameterError);
  CHECK_THROWS_AS(q_independence_check(Rational(5, 2), {}), hypflow::ParameterError);
  CHECK_THROWS_AS(q_independence_check(Rational(5, 2), {Exponent::infinity()}), hypflow::ParameterError);
}

TEST_CASE("CSV rows") {
  std::vector<IntegralResult> rows{scaling_integral(1.0, 3, 6), scaling_integral(1.0, 2, 6)};
  std::ostringstream os;
  write_csv(os, rows);
  const std::string s = os.str();
  CHECK(s.rfind("t,p,q,gamma,I,bound,class\n", 0) == 0);
  CHECK(s.find(",bounded\n") != std::string::npos);
  CHECK(s.find("1,2,6,2.8888888888888888,inf,inf,strictly-divergent\n") != std::string::npos);
}
