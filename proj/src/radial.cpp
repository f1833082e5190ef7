#include "hypflow/radial.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <ostream>

#include "hypflow/error.hpp"
#include "hypflow/quadrature.hpp"

namespace hypflow::radial {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-4;
constexpr double kTailWarning = 1e-10;

// Runs the trigonometric recurrence s_j = sin(j * step * r) for j = 0..count-1
// and hands each value to `use(j, s_j)`. Increment form keeps relative accuracy
// for small arguments.
template <class Use>
void for_each_sine(double r, double step, std::size_t count, Use&& use) {
  const double theta = step * r;
  const double half_sin = std::sin(0.5 * theta);
  const double alpha = 2.0 * half_sin * half_sin;
  const double beta = std::sin(theta);
  double c = 1.0;
  double s = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    use(j, s);
    const double c_next = c - (alpha * c + beta * s);
    s = s + (beta * c - alpha * s);
    c = c_next;
  }
}

double sinc(double x) {
  if (std::abs(x) < kSeriesCutoff) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

RadialGrid RadialGrid::composite(const GridSpec& spec) {
  if (!(spec.r_max > 0.0) || spec.panels == 0 || spec.points_per_panel == 0)
    throw ParameterError("grid needs r_max > 0 and at least one panel and point");
  std::vector<double> breaks(spec.panels + 1);
  for (std::size_t k = 0; k <= spec.panels; ++k)
    breaks[k] = spec.r_max * static_cast<double>(k) / static_cast<double>(spec.panels);
  return from_breakpoints(breaks, spec.points_per_panel);
}

RadialGrid RadialGrid::from_breakpoints(std::span<const double> breakpoints, std::size_t points_per_panel) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0)
    throw ParameterError("grid breakpoints must start at 0 and define at least one panel");
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k] > breakpoints[k - 1])) throw ParameterError("grid breakpoints must be strictly increasing");
  const auto rule = quad::gauss_legendre(points_per_panel);
  RadialGrid grid(Empty{});
  const std::size_t n = (breakpoints.size() - 1) * points_per_panel;
  grid.nodes_.reserve(n);
  grid.dr_weights_.reserve(n);
  grid.volume_weights_.reserve(n);
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double mid = 0.5 * (breakpoints[k] + breakpoints[k + 1]);
    const double half = 0.5 * (breakpoints[k + 1] - breakpoints[k]);
    for (std::size_t i = 0; i < points_per_panel; ++i) {
      const double r = mid + half * rule.nodes[i];
      const double w = half * rule.weights[i];
      grid.nodes_.push_back(r);
      grid.dr_weights_.push_back(w);
      grid.volume_weights_.push_back(w * volume_weight(r));
    }
  }
  grid.r_max_ = breakpoints.back();
  return grid;
}

RadialGrid RadialGrid::for_scale(double length_scale) {
  if (!(length_scale > 0.0)) throw ParameterError("length scale must be positive");
  const GridSpec defaults;
  if (20.0 * length_scale >= defaults.r_max) return composite(defaults);
  return composite(GridSpec{20.0 * length_scale, 64, 32});
}

std::vector<double> FrequencyGrid::nodes() const {
  if (count < 2 || !(lambda_max > 0.0)) throw ParameterError("frequency grid needs count >= 2 and lambda_max > 0");
  std::vector<double> out(count);
  const double step = lambda_max / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) out[j] = step * static_cast<double>(j);
  return out;
}

std::vector<double> FrequencyGrid::trapezoid_weights() const {
  if (count < 2 || !(lambda_max > 0.0)) throw ParameterError("frequency grid needs count >= 2 and lambda_max > 0");
  const double step = lambda_max / static_cast<double>(count - 1);
  std::vector<double> w(count, step);
  w.front() = w.back() = 0.5 * step;
  return w;
}

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ParameterError("field values do not match grid size");
}

RadialField RadialField::sample(RadialGrid grid, const std::function<double(double)>& f) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double r : grid.nodes()) values.push_back(f(r));
  return RadialField(std::move(grid), std::move(values));
}

RadialField RadialField::zero(RadialGrid grid) {
  const std::size_t n = grid.size();
  return RadialField(std::move(grid), std::vector<double>(n, 0.0));
}

double RadialField::integrate() const {
  const auto w = weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) sum += w[i] * values_[i];
  return sum;
}

RadialField RadialField::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return RadialField(grid_, std::move(out));
}

RadialField RadialField::combine(double a, const RadialField& other, double b) const {
  if (!(grid_ == other.grid_)) throw ParameterError("combining fields on different grids");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * values_[i] + b * other.values_[i];
  return RadialField(grid_, std::move(out));
}

double SpectralField::plancherel_norm_squared() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) sum += plancherel_weights[j] * coeffs[j] * coeffs[j];
  return sum;
}

double r_over_sinh(double r) {
  const double a = std::abs(r);
  if (a < kSeriesCutoff) return 1.0 - a * a / 6.0;
  if (a < 20.0) return a / std::sinh(a);
  // 2 r e^{-r} / (1 - e^{-2r}), safe for any large r.
  return 2.0 * a * std::exp(-a) / (-std::expm1(-2.0 * a));
}

double spherical_function(double lambda, double r) { return sinc(lambda * r) * r_over_sinh(r); }

double log_heat_kernel_value(double t, double r) {
  if (!(t > 0.0)) throw ParameterError("heat kernel needs t > 0");
  if (!(r >= 0.0)) throw ParameterError("heat kernel needs r >= 0");
  double log_ratio = 0.0;
  if (r < 20.0) {
    log_ratio = std::log(r_over_sinh(r));
  } else {
    log_ratio = std::log(2.0 * r) - r - std::log1p(-std::exp(-2.0 * r));
  }
  return -1.5 * std::log(4.0 * kPi * t) + log_ratio - t - r * r / (4.0 * t);
}

double heat_kernel_value(double t, double r) { return std::exp(log_heat_kernel_value(t, r)); }

double heat_kernel_value(const HeatKernelParams& params, double r) {
  if (!(params.mu > 0.0)) throw ParameterError("heat kernel needs mu > 0");
  if (!(params.t > 0.0)) throw ParameterError("heat kernel needs t > 0");
  return heat_kernel_value(params.mu * params.t, r);
}

double volume_weight(double r) {
  if (!(r >= 0.0)) throw ParameterError("volume weight needs r >= 0");
  const double s = std::sinh(r);
  return 4.0 * kPi * s * s;
}

double ball_volume(double radius) {
  if (!(radius >= 0.0)) throw ParameterError("ball radius must be nonnegative");
  return 2.0 * kPi * (std::sinh(radius) * std::cosh(radius) - radius);
}

double lp_norm(const RadialField& f, double p) {
  if (!(p >= 1.0)) throw ParameterError("Lp norm needs p >= 1");
  const auto v = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const auto w = f.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a == 0.0) continue;
    sum += w[i] * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p));
  }
  return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

SpectralField spherical_transform(const RadialField& f, const FrequencyGrid& freqs) {
  SpectralField out;
  out.freqs = freqs.nodes();
  const auto trap = freqs.trapezoid_weights();
  const std::size_t m = out.freqs.size();
  const double step = out.freqs[1] - out.freqs[0];

  out.coeffs.assign(m, 0.0);
  double limit_zero = 0.0;
  const auto r = f.grid().nodes();
  const auto dr = f.grid().dr_weights();
  const auto vals = f.values();
  double max_density = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (vals[i] == 0.0) continue;
    // w * 4 pi sinh^2 r * f * phi = (4 pi sinh r * w * f) * sin(lambda r) / lambda
    const double g = 4.0 * kPi * std::sinh(r[i]) * dr[i] * vals[i];
    limit_zero += g * r[i];
    for_each_sine(r[i], step, m, [&](std::size_t j, double s) { out.coeffs[j] += g * s; });
    max_density = std::max(max_density, std::abs(vals[i]) * volume_weight(r[i]));
  }
  out.coeffs[0] = limit_zero;
  for (std::size_t j = 1; j < m; ++j) out.coeffs[j] /= out.freqs[j];

  out.plancherel_weights.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    out.plancherel_weights[j] = kPlancherelConstant * out.freqs[j] * out.freqs[j] * trap[j];

  if (max_density > 0.0 && !r.empty()) {
    out.tail_estimate = std::abs(vals.back()) * volume_weight(r.back()) / max_density;
    out.truncation_warning = out.tail_estimate > kTailWarning;
  }
  return out;
}

RadialField inverse_spherical_transform(const SpectralField& spectrum, const RadialGrid& grid) {
  const std::size_t m = spectrum.freqs.size();
  if (m < 2) throw ParameterError("inverse transform needs a nonempty frequency grid");
  if (spectrum.coeffs.size() != m || spectrum.plancherel_weights.size() != m)
    throw ParameterError("spectral field arrays have inconsistent sizes");
  const double step = spectrum.freqs[1] - spectrum.freqs[0];
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(spectrum.freqs[j] - step * static_cast<double>(j)) > 1e-9 * spectrum.freqs.back())
      throw ParameterError("inverse transform requires a uniform frequency grid starting at 0");
  }

  // f(r) = (1 / sinh r) * sum_j a_j sin(lambda_j r) with a_j = pw_j F_j / lambda_j.
  std::vector<double> a(m, 0.0);
  double sum_zero = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sum_zero += spectrum.plancherel_weights[j] * spectrum.coeffs[j];
    if (j > 0) a[j] = spectrum.plancherel_weights[j] * spectrum.coeffs[j] / spectrum.freqs[j];
  }

  std::vector<double> values(grid.size());
  const auto r = grid.nodes();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0.0) {
      values[i] = sum_zero;
      continue;
    }
    double sum = 0.0;
    for_each_sine(r[i], step, m, [&](std::size_t j, double s) { sum += a[j] * s; });
    values[i] = sum / std::sinh(r[i]);
  }
  return RadialField(grid, std::move(values));
}

RadialField convolve_radial(const RadialField& f, const RadialField& g, const FrequencyGrid& freqs) {
  SpectralField fs = spherical_transform(f, freqs);
  const SpectralField gs = spherical_transform(g, freqs);
  for (std::size_t j = 0; j < fs.coeffs.size(); ++j) fs.coeffs[j] *= gs.coeffs[j];
  return inverse_spherical_transform(fs, f.grid());
}

RadialField heat_kernel_field(const RadialGrid& grid, const HeatKernelParams& params) {
  return RadialField::sample(grid, [&](double r) { return heat_kernel_value(params, r); });
}

RadialField gaussian_bump(const RadialGrid& grid, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("Gaussian bump needs sigma > 0");
  const double a = 1.0 / (2.0 * sigma * sigma);
  return RadialField::sample(grid, [a](double r) { return std::exp(-a * r * r); });
}

double gaussian_bump_mass(double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("Gaussian bump needs sigma > 0");
  return kPi * std::sqrt(2.0 * kPi) * sigma * std::expm1(2.0 * sigma * sigma);
}

RadialField delta_approximation(const RadialGrid& grid, double width) {
  return gaussian_bump(grid, width).scaled(1.0 / gaussian_bump_mass(width));
}

double relative_l2_difference(const RadialField& f, const RadialField& g) {
  const RadialField diff = f.combine(1.0, g, -1.0);
  const double denom = lp_norm(g, 2.0);
  if (denom == 0.0) return lp_norm(diff, 2.0);
  return lp_norm(diff, 2.0) / denom;
}

void write_csv(std::ostream& os, const RadialField& f) {
  os << "r,value\n";
  const auto r = f.grid().nodes();
  const auto v = f.values();
  for (std::size_t i = 0; i < r.size(); ++i) os << fmt::format("{:.17g},{:.17g}\n", r[i], v[i]);
}

}  // namespace hypflow::radial
