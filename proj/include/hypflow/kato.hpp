#pragma once

// Exponent algebra and the time-convolution integral of the Fujita-Kato
// contraction in the weighted space sup_t e^{alpha t} t^beta ||u(t)||_q.
//
//   I(t) = e^{alpha t} t^beta int_0^t (t-s)^{-delta} e^{-mu gamma (t-s)} e^{-2 alpha s} s^{-2 beta} ds
//
// with beta = 3/(2p) - 3/(2q) and delta = 1/2 + 3/(2q). After s = tau t,
//   I(t) = t^{1 - delta - beta} int_0^1 (1-tau)^{-delta} tau^{-2 beta} E(tau) d tau,
// and 1 - delta - beta = 1/2 - 3/(2p) does not depend on q.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypflow/rational.hpp"

namespace hypflow::kato {

enum class IntegralClass {
  /// p >= 3: I(t) bounded uniformly in t.
  bounded,
  /// 2 < p < 3: finite for each t but blows up as t -> 0.
  uv_divergent,
  /// p <= 2
  strictly_divergent,
};

std::string to_string(IntegralClass c);
IntegralClass parse_class(const std::string& text);

struct KatoExponents {
  Exponent p = 3;
  Exponent q = 6;
  Rational beta;
  Rational delta;
  Rational scaling_exponent;
  IntegralClass integral_class = IntegralClass::bounded;
  /// 1 < p <= q and q > 3.
  bool admissible = true;
  /// beta >= 1/2 or delta >= 1: the integrand is not integrable at an endpoint,
  /// so I(t) = +inf for every t > 0.
  bool pointwise_divergent = false;

  friend bool operator==(const KatoExponents&, const KatoExponents&) = default;
};

/// Exact exponents for (p, q). Inputs outside the admissible window are still
/// computed and flagged; p < 1 or q < 1 is a parameter error.
KatoExponents exponents(const Exponent& p, const Exponent& q);

/// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms) with reflection
/// below 1/2.
double log_gamma(double x);
/// Gamma(a) Gamma(b) / Gamma(a + b); a, b > 0.
double beta_function(double a, double b);

struct RefinementStep {
  std::size_t level = 0;
  /// Bounded case: function evaluations used. Divergent case: log(1/cutoff), the
  /// distance in log-scale of the truncation point from the singular endpoint.
  double size = 0.0;
  double value = 0.0;
};

struct IntegralParams {
  double mu = 1.0;
  /// Defaults to the bilinear gap for r = q/2 (26/9 at q = 6).
  std::optional<double> gamma;
  /// Defaults to mu * gamma.
  std::optional<double> alpha;
  double abs_tolerance = 1e-8;
  std::size_t max_refinements = 20;
};

struct IntegralResult {
  double t = 0.0;
  KatoExponents exponents;
  double mu = 1.0;
  double gamma = 0.0;
  double alpha = 0.0;
  bool divergent = false;
  /// +inf when divergent.
  double value = 0.0;
  /// B(1 - 2 beta, 1 - delta) t^{scaling_exponent} when both arguments are positive.
  std::optional<double> bound;
  std::vector<RefinementStep> trace;
};

/// Evaluates I(t) by endpoint-desingularised adaptive quadrature, or returns a
/// divergence marker with a strictly increasing truncation trace (cutoffs
/// 2^{-2^k}, k = 1..max_refinements).
IntegralResult scaling_integral(double t, const Exponent& p, const Exponent& q, const IntegralParams& params = {});

struct SlopeEntry {
  Exponent q = 6;
  double gamma = 0.0;
  double slope = 0.0;
  /// exp(intercept) of the log-log fit: the short-time prefactor C0.
  double prefactor = 0.0;
};

struct QIndependenceOptions {
  /// Short times for the log-log fit; empty means 9 log-spaced points in [1e-8, 1e-6].
  std::vector<double> t_grid;
  double mu = 1.0;
  /// Gap values to sweep; empty means the default gamma for each q.
  std::vector<double> gammas;
  double slope_tolerance = 1e-2;
};

struct QIndependenceReport {
  Exponent p = 3;
  double expected_slope = 0.0;
  std::vector<SlopeEntry> entries;
  /// max - min of fitted slopes over all entries.
  double max_spread = 0.0;
  /// Largest spread over gammas at a fixed q.
  double max_gamma_spread = 0.0;
  bool pass = false;
};

/// Fits d log I / d log t near t = 0 for every q (and gamma) and checks that all
/// slopes equal 1/2 - 3/(2p). Requires p > 2 and every q > 3.
QIndependenceReport q_independence_check(const Exponent& p, const std::vector<Exponent>& q_list,
                                         const QIndependenceOptions& options = {});

/// CSV with header "t,p,q,gamma,I,bound,class"; divergent values print as inf.
void write_csv(std::ostream& os, const std::vector<IntegralResult>& results);

}  // namespace hypflow::kato
