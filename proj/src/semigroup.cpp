#include "hypflow/semigroup.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypflow/error.hpp"
#include "hypflow/gaps.hpp"
#include "hypflow/parallel.hpp"

namespace hypflow::semigroup {

using radial::FrequencyGrid;
using radial::RadialField;
using radial::RadialGrid;

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::scalar: return "scalar";
    case Kind::deformation_scalar: return "deformation-scalar";
    case Kind::stokes_surrogate: return "stokes-surrogate";
  }
  return "unknown";
}

Kind parse_kind(const std::string& text) {
  if (text == "scalar") return Kind::scalar;
  if (text == "deformation-scalar" || text == "deformation") return Kind::deformation_scalar;
  if (text == "stokes-surrogate" || text == "stokes") return Kind::stokes_surrogate;
  throw ParameterError("unknown semigroup kind '" + text + "'");
}

SemigroupSpec::SemigroupSpec(Kind kind, double mu) : kind_(kind), mu_(mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("semigroup needs mu > 0");
}

double SemigroupSpec::shift() const {
  switch (kind_) {
    case Kind::scalar: return 0.0;
    case Kind::deformation_scalar: return 2.0;
    case Kind::stokes_surrogate: return 4.0;
  }
  return 0.0;
}

std::vector<RadialField> apply_many(const SemigroupSpec& spec, const RadialField& f, std::span<const double> times,
                                    const FrequencyGrid& freqs) {
  for (double t : times)
    if (!(t >= 0.0)) throw ParameterError("semigroup time must be nonnegative");
  std::vector<RadialField> out;
  out.reserve(times.size());
  if (std::all_of(times.begin(), times.end(), [](double t) { return t == 0.0; })) {
    out.assign(times.size(), f);
    return out;
  }
  const radial::SpectralField base = radial::spherical_transform(f, freqs);
  for (double t : times) {
    if (t == 0.0) {
      out.push_back(f);
      continue;
    }
    radial::SpectralField evolved = base;
    for (std::size_t j = 0; j < evolved.coeffs.size(); ++j) {
      const double lambda = evolved.freqs[j];
      evolved.coeffs[j] *= std::exp(-t * spec.mu() * (1.0 + lambda * lambda));
    }
    RadialField g = radial::inverse_spherical_transform(evolved, f.grid());
    if (spec.shift() != 0.0) {
      const double damping = std::exp(-t * spec.mu() * spec.shift());
      std::vector<double> v(g.values().begin(), g.values().end());
      for (double& x : v) x *= damping;
      g = RadialField(f.grid(), std::move(v));
    }
    out.push_back(std::move(g));
  }
  return out;
}

RadialField apply(const SemigroupSpec& spec, const RadialField& f, double t, const FrequencyGrid& freqs) {
  const double times[] = {t};
  return std::move(apply_many(spec, f, times, freqs).front());
}

RadialField apply_by_convolution(const SemigroupSpec& spec, const RadialField& f, double t) {
  if (!(t >= 0.0)) throw ParameterError("semigroup time must be nonnegative");
  if (t == 0.0) return f;
  const double tau = spec.mu() * t;
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * tau);
  const double damping = std::exp(-tau * (1.0 + spec.shift()));
  const auto r = f.grid().nodes();
  const auto dr = f.grid().dr_weights();
  const auto v = f.values();

  std::vector<double> source(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) source[j] = dr[j] * std::sinh(r[j]) * v[j];

  std::vector<double> out(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (source[j] == 0.0) continue;
      const double d = r[i] - r[j];
      const double e = d * d / (4.0 * tau);
      if (e > 745.0) continue;
      // G(r - s) - G(r + s) = G(r - s) (1 - exp(-r s / tau)).
      sum += source[j] * std::exp(-e) * -std::expm1(-r[i] * r[j] / tau);
    }
    out[i] = damping * norm * sum / std::sinh(r[i]);
  }
  return RadialField(f.grid(), std::move(out));
}

DecayFit decay_rate_fit(std::span<const double> times, std::span<const double> norms, DecayModel model) {
  if (times.size() != norms.size()) throw ParameterError("decay fit needs equally many times and norms");
  if (times.size() < 4) throw ParameterError("decay fit needs at least 4 samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) throw ParameterError("decay fit needs positive norms");
    if (!(times[i] > 0.0)) throw ParameterError("decay fit needs positive times");
    if (i > 0 && !(times[i] > times[i - 1])) throw ParameterError("decay fit needs increasing times");
  }
  const auto n = static_cast<Eigen::Index>(times.size());
  const Eigen::Index cols = model == DecayModel::exponential_power ? 3 : 2;
  Eigen::MatrixXd design(n, cols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = -t;
    if (cols == 3) design(i, 2) = -std::log(t);
    rhs(i) = std::log(norms[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);

  DecayFit fit;
  fit.log_prefactor = coef(0);
  fit.rate = coef(1);
  fit.power = cols == 3 ? coef(2) : 0.0;
  fit.t_min = times.front();
  fit.t_max = times.back();
  const Eigen::VectorXd model_log = design * coef;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rel = std::abs(std::expm1(rhs(i) - model_log(i)));
    fit.residual = std::max(fit.residual, rel);
  }
  return fit;
}

double expected_gap(Kind kind, const Exponent& p, double mu) {
  switch (kind) {
    case Kind::scalar: return mu * gaps::scalar_gap(p).to_double();
    case Kind::deformation_scalar: return mu * gaps::deformation_gap(p).deformation_lower.to_double();
    case Kind::stokes_surrogate: {
      const auto report = gaps::deformation_gap(p);
      return mu * report.exact_l2.value_or(report.deformation_lower).to_double();
    }
  }
  return 0.0;
}

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> geomspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  const double la = std::log(a);
  const double lb = std::log(b);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

LpLqMember measure_member(const SemigroupSpec& spec, double p, double q, double sigma, const LpLqOptions& opt) {
  LpLqMember member;
  member.sigma = sigma;

  const auto long_times = linspace(opt.long_t_min, opt.long_t_max, opt.long_samples);
  const RadialField bump = radial::gaussian_bump(RadialGrid(), sigma);
  const double bump_norm = radial::lp_norm(bump, p);
  const auto evolved = apply_many(spec, bump, long_times);
  std::vector<double> ratios;
  ratios.reserve(long_times.size());
  for (const auto& e : evolved) ratios.push_back(radial::lp_norm(e, q) / bump_norm);
  member.long_time = decay_rate_fit(long_times, ratios);

  const auto short_times = geomspace(opt.short_t_min, opt.short_t_max, opt.short_samples);
  std::vector<double> short_ratios;
  short_ratios.reserve(short_times.size());
  for (double t : short_times) {
    const double tau = spec.mu() * t;
    const double width = sigma * std::sqrt(tau);
    const double scale = std::sqrt(width * width + 2.0 * tau);
    const RadialField f = radial::gaussian_bump(RadialGrid::for_scale(scale), width);
    // Resolve the bump spectrum to exp(-72) and keep the aliasing period of the
    // uniform frequency grid well beyond the grid radius.
    const FrequencyGrid freqs{12.0 / width, 2048};
    const RadialField g = apply(spec, f, t, freqs);
    short_ratios.push_back(radial::lp_norm(g, q) / radial::lp_norm(f, p));
  }
  member.short_time = decay_rate_fit(short_times, short_ratios);
  member.short_time_exponent = -member.short_time.power;
  return member;
}

}  // namespace

LpLqReport verify_lp_lq(const SemigroupSpec& spec, const Exponent& p, const Exponent& q, const LpLqOptions& options) {
  if (p < Exponent(1) || q < Exponent(1)) throw ParameterError("Lp-Lq check needs p, q >= 1");
  if (p > q) throw ParameterError("Lp-Lq check needs p <= q");
  if (options.sigmas.empty()) throw ParameterError("Lp-Lq check needs a nonempty test family");
  if (options.long_samples < 4 || options.short_samples < 4) throw ParameterError("Lp-Lq check needs >= 4 samples per window");
  if (!(options.long_t_min > 0.0 && options.long_t_max > options.long_t_min && options.short_t_min > 0.0 &&
        options.short_t_max > options.short_t_min))
    throw ParameterError("Lp-Lq check needs positive, increasing time windows");

  LpLqReport report;
  report.kind = spec.kind();
  report.mu = spec.mu();
  report.p = p;
  report.q = q;
  report.expected_gap = expected_gap(spec.kind(), p, spec.mu());
  report.expected_power = -1.5 * (p.reciprocal() - q.reciprocal()).to_double();

  report.members.resize(options.sigmas.size());
  parallel_for(options.sigmas.size(), [&](std::size_t i) {
    report.members[i] = measure_member(spec, p.to_double(), q.to_double(), options.sigmas[i], options);
  });

  report.fitted_rate = report.members.front().long_time.rate;
  double exponent_sum = 0.0;
  report.power_pass = true;
  for (const auto& m : report.members) {
    report.fitted_rate = std::min(report.fitted_rate, m.long_time.rate);
    exponent_sum += m.short_time_exponent;
    if (std::abs(m.short_time_exponent - report.expected_power) > options.power_tolerance) report.power_pass = false;
  }
  report.fitted_power = exponent_sum / static_cast<double>(report.members.size());
  report.rate_pass = report.fitted_rate >= report.expected_gap - options.rate_tolerance;
  report.pass = report.rate_pass && report.power_pass;
  return report;
}

}  // namespace hypflow::semigroup
