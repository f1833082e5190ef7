#include "hypflow/kato.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <ostream>

#include "hypflow/error.hpp"
#include "hypflow/gaps.hpp"
#include "hypflow/quadrature.hpp"

namespace hypflow::kato {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond this log-distance from a singular endpoint, exp(-x) is below double
// resolution next to 1 and the smooth factor is frozen at its endpoint value.
constexpr double kFrozenTail = 40.0;

const Rational kHalf(1, 2);
const Rational kThreeHalves(3, 2);

}  // namespace

std::string to_string(IntegralClass c) {
  switch (c) {
    case IntegralClass::bounded: return "bounded";
    case IntegralClass::uv_divergent: return "uv-divergent";
    case IntegralClass::strictly_divergent: return "strictly-divergent";
  }
  return "unknown";
}

IntegralClass parse_class(const std::string& text) {
  if (text == "bounded") return IntegralClass::bounded;
  if (text == "uv-divergent") return IntegralClass::uv_divergent;
  if (text == "strictly-divergent") return IntegralClass::strictly_divergent;
  throw ParameterError("unknown integral class '" + text + "'");
}

KatoExponents exponents(const Exponent& p, const Exponent& q) {
  if (p < Exponent(1) || q < Exponent(1)) throw ParameterError("exponents need p, q >= 1");
  KatoExponents e;
  e.p = p;
  e.q = q;
  e.beta = kThreeHalves * p.reciprocal() - kThreeHalves * q.reciprocal();
  e.delta = kHalf + kThreeHalves * q.reciprocal();
  e.scaling_exponent = kHalf - kThreeHalves * p.reciprocal();
  if (p >= Exponent(3)) {
    e.integral_class = IntegralClass::bounded;
  } else if (p > Exponent(2)) {
    e.integral_class = IntegralClass::uv_divergent;
  } else {
    e.integral_class = IntegralClass::strictly_divergent;
  }
  e.admissible = p > Exponent(1) && p <= q && q > Exponent(3);
  e.pointwise_divergent = e.beta >= kHalf || e.delta >= Rational(1);
  return e;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw ParameterError("log_gamma needs x > 0");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  static constexpr double kG = 7.0;
  static constexpr double kCoeffs[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                        771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double series = kCoeffs[0];
  for (int i = 1; i < 9; ++i) series += kCoeffs[i] / (z + static_cast<double>(i));
  const double tt = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(tt) - tt + std::log(series);
}

double beta_function(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("Beta function needs positive arguments");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace {

double default_gamma(const Exponent& q) {
  // Bilinear estimate with 1/r = 2/q.
  if (q.is_infinite()) throw ParameterError("default gamma needs finite q; pass gamma explicitly");
  const Rational r = q.value() / Rational(2);
  if (r <= Rational(1)) throw ParameterError("default gamma needs q > 2; pass gamma explicitly");
  return gaps::bilinear_gamma(Exponent(r)).to_double();
}

struct Integrand {
  double beta;
  double delta;
  double t;
  double mu_gamma;
  double alpha;

  // E(tau) = exp(alpha t - mu gamma t (1 - tau) - 2 alpha t tau)
  double exp_factor(double tau) const {
    return std::exp(alpha * t - mu_gamma * t * (1.0 - tau) - 2.0 * alpha * t * tau);
  }
  // Smooth near tau = 0 after removing tau^{-2 beta}.
  double left_smooth(double tau) const { return std::pow(1.0 - tau, -delta) * exp_factor(tau); }
  // Smooth near tau = 1 after removing (1 - tau)^{-delta}.
  double right_smooth(double tau) const { return std::pow(tau, -2.0 * beta) * exp_factor(tau); }
};

quad::AdaptiveResult checked(const quad::AdaptiveResult& r, const char* what) {
  if (!r.converged || !std::isfinite(r.value))
    throw NumericalError(std::string("quadrature did not converge: ") + what);
  return r;
}

// int_0^{1/2} tau^{-2 beta} left_smooth(tau) d tau via tau = sigma^{1/(1 - 2 beta)}.
quad::AdaptiveResult left_regular(const Integrand& f, double tol) {
  const double a0 = 1.0 - 2.0 * f.beta;
  const double upper = std::pow(0.5, a0);
  auto g = [&](double sigma) { return f.left_smooth(std::pow(sigma, 1.0 / a0)) / a0; };
  return quad::integrate_adaptive(g, 0.0, upper, tol, 1e-13);
}

// int_{1/2}^1 (1 - tau)^{-delta} right_smooth(tau) d tau via 1 - tau = rho^{1/(1 - delta)}.
quad::AdaptiveResult right_regular(const Integrand& f, double tol) {
  const double b0 = 1.0 - f.delta;
  const double upper = std::pow(0.5, b0);
  auto g = [&](double rho) { return f.right_smooth(1.0 - std::pow(rho, 1.0 / b0)) / b0; };
  return quad::integrate_adaptive(g, 0.0, upper, tol, 1e-13);
}

// Integral over x in [x0, x1] of exp(c x) smooth(endpoint(x)) where the
// endpoint map sends x to distance exp(-x) from the singular end. c >= 0.
double log_scale_piece(const std::function<double(double)>& smooth_at_distance, double c, double x0, double x1,
                       double tol) {
  double total = 0.0;
  const double split = std::clamp(kFrozenTail, x0, x1);
  if (split > x0) {
    auto g = [&](double x) { return std::exp(c * x) * smooth_at_distance(std::exp(-x)); };
    total += checked(quad::integrate_adaptive(g, x0, split, tol, 1e-13), "divergent endpoint piece").value;
  }
  if (x1 > split) {
    const double frozen = smooth_at_distance(0.0);
    if (c == 0.0) {
      total += frozen * (x1 - split);
    } else {
      // frozen * (e^{c x1} - e^{c split}) / c, overflowing to inf.
      const double grow = c * x1;
      total += grow > 700.0 ? kInf : frozen * (std::exp(grow) - std::exp(c * split)) / c;
    }
  }
  return total;
}

}  // namespace

IntegralResult scaling_integral(double t, const Exponent& p, const Exponent& q, const IntegralParams& params) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("scaling integral needs t > 0");
  if (!(params.mu > 0.0)) throw ParameterError("scaling integral needs mu > 0");
  if (!(params.abs_tolerance > 0.0)) throw ParameterError("scaling integral needs a positive tolerance");

  IntegralResult out;
  out.t = t;
  out.exponents = exponents(p, q);
  out.mu = params.mu;
  out.gamma = params.gamma ? *params.gamma : default_gamma(q);
  out.alpha = params.alpha ? *params.alpha : params.mu * out.gamma;
  if (out.gamma < 0.0) throw ParameterError("scaling integral needs gamma >= 0");

  const Integrand f{out.exponents.beta.to_double(), out.exponents.delta.to_double(), t, params.mu * out.gamma,
                    out.alpha};
  const double prefactor = std::pow(t, out.exponents.scaling_exponent.to_double());
  const double a0 = 1.0 - 2.0 * f.beta;
  const double b0 = 1.0 - f.delta;
  if (a0 > 0.0 && b0 > 0.0) out.bound = beta_function(a0, b0) * prefactor;

  if (!out.exponents.pointwise_divergent) {
    const double tolerances[] = {1e-4, 1e-6, params.abs_tolerance};
    std::size_t level = 0;
    for (double tol : tolerances) {
      const double scaled = tol / std::max(prefactor, 1e-300) / 2.0;
      const auto left = checked(left_regular(f, scaled), "left endpoint");
      const auto right = checked(right_regular(f, scaled), "right endpoint");
      out.value = prefactor * (left.value + right.value);
      out.trace.push_back({++level, static_cast<double>(left.evaluations + right.evaluations), out.value});
    }
    return out;
  }

  out.divergent = true;
  out.value = kInf;
  const bool left_singular = a0 <= 0.0;
  const bool right_singular = b0 <= 0.0;
  // Finite parts that do not depend on the cutoff.
  double fixed = 0.0;
  if (!left_singular) fixed += checked(left_regular(f, params.abs_tolerance), "left endpoint").value;
  if (!right_singular) fixed += checked(right_regular(f, params.abs_tolerance), "right endpoint").value;

  auto left_at = [&](double dist) { return f.left_smooth(dist); };
  auto right_at = [&](double dist) { return f.right_smooth(1.0 - dist); };
  const double x_start = std::numbers::ln2;
  double running = fixed;
  double previous_cutoff = x_start;
  for (std::size_t k = 1; k <= params.max_refinements; ++k) {
    const double cutoff = std::numbers::ln2 * std::ldexp(1.0, static_cast<int>(k));
    if (left_singular) running += log_scale_piece(left_at, -a0, previous_cutoff, cutoff, params.abs_tolerance);
    if (right_singular) running += log_scale_piece(right_at, -b0, previous_cutoff, cutoff, params.abs_tolerance);
    previous_cutoff = cutoff;
    out.trace.push_back({k, cutoff, prefactor * running});
    if (!std::isfinite(running)) break;
  }
  return out;
}

namespace {

std::vector<double> default_t_grid() {
  std::vector<double> out(9);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(10.0, -8.0 + 2.0 * static_cast<double>(i) / 8.0);
  return out;
}

// Ordinary least squares of y on x; returns (slope, intercept).
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

QIndependenceReport q_independence_check(const Exponent& p, const std::vector<Exponent>& q_list,
                                         const QIndependenceOptions& options) {
  if (!(p > Exponent(2))) throw ParameterError("q-independence check needs p > 2");
  if (q_list.empty()) throw ParameterError("q-independence check needs at least one q");
  for (const auto& q : q_list)
    if (!(q > Exponent(3))) throw ParameterError("q-independence check needs every q > 3");
  for (const auto& q : q_list)
    if (exponents(p, q).pointwise_divergent)
      throw ParameterError("I(t) is infinite for p = " + p.str() + ", q = " + q.str() + "; no slope to fit");
  const std::vector<double> t_grid = options.t_grid.empty() ? default_t_grid() : options.t_grid;
  if (t_grid.size() < 2) throw ParameterError("q-independence check needs at least two times");
  for (double t : t_grid)
    if (!(t > 0.0)) throw ParameterError("q-independence check needs positive times");

  QIndependenceReport report;
  report.p = p;
  report.expected_slope = (kHalf - kThreeHalves * p.reciprocal()).to_double();

  std::vector<double> log_t;
  for (double t : t_grid) log_t.push_back(std::log(t));

  double lo = kInf;
  double hi = -kInf;
  report.pass = true;
  for (const auto& q : q_list) {
    const std::vector<double> gammas = options.gammas.empty() ? std::vector<double>{default_gamma(q)} : options.gammas;
    double q_lo = kInf;
    double q_hi = -kInf;
    for (double gamma : gammas) {
      IntegralParams params;
      params.mu = options.mu;
      params.gamma = gamma;
      params.abs_tolerance = 1e-12;
      std::vector<double> log_i;
      for (double t : t_grid) {
        const IntegralResult r = scaling_integral(t, p, q, params);
        if (r.divergent || !(r.value > 0.0)) throw NumericalError("scaling integral not finite in slope fit");
        log_i.push_back(std::log(r.value));
      }
      const auto [slope, intercept] = line_fit(log_t, log_i);
      report.entries.push_back({q, gamma, slope, std::exp(intercept)});
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
      q_lo = std::min(q_lo, slope);
      q_hi = std::max(q_hi, slope);
      if (std::abs(slope - report.expected_slope) > options.slope_tolerance) report.pass = false;
    }
    report.max_gamma_spread = std::max(report.max_gamma_spread, q_hi - q_lo);
  }
  report.max_spread = hi - lo;
  if (report.max_spread > options.slope_tolerance) report.pass = false;
  return report;
}

void write_csv(std::ostream& os, const std::vector<IntegralResult>& results) {
  os << "t,p,q,gamma,I,bound,class\n";
  for (const auto& r : results) {
    const std::string value = r.divergent ? "inf" : fmt::format("{:.17g}", r.value);
    const std::string bound = r.bound ? fmt::format("{:.17g}", *r.bound) : "inf";
    os << fmt::format("{:.17g},{},{},{:.17g},{},{},{}\n", r.t, r.exponents.p.str(), r.exponents.q.str(), r.gamma,
                      value, bound, to_string(r.exponents.integral_class));
  }
}

}  // namespace hypflow::kato
