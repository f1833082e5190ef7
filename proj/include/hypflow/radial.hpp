#pragma once

// Radial functions on hyperbolic 3-space (sectional curvature -1).
//
// A radial function is stored by its samples on a composite Gauss-Legendre grid
// in the geodesic radius r. Quadrature weights carry the volume element
// 4 pi sinh^2(r) dr, so sum(w_i f_i) approximates the integral over the space.
//
// The spherical transform uses the elementary spherical functions
//   phi_lambda(r) = sin(lambda r) / (lambda sinh r),   phi_lambda(0) = 1,
// which are eigenfunctions of the Laplacian with eigenvalue -(1 + lambda^2).
// The heat kernel therefore has transform exp(-t (1 + lambda^2)) and the
// inverse transform is
//   f(r) = c * int_0^inf F(lambda) phi_lambda(r) lambda^2 d lambda,  c = 1/(2 pi^2).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

namespace hypflow::radial {

/// Normalisation of the inverse spherical transform. Pinned by the round-trip
/// calibration test on a reference Gaussian bump.
inline constexpr double kPlancherelConstant = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

struct GridSpec {
  double r_max = 60.0;
  std::size_t panels = 60;
  std::size_t points_per_panel = 64;
};

/// Composite Gauss-Legendre nodes on [0, r_max]. Immutable after construction.
class RadialGrid {
 public:
  RadialGrid() : RadialGrid(composite(GridSpec{})) {}

  static RadialGrid composite(const GridSpec& spec);
  /// Panels between consecutive breakpoints (strictly increasing, starting at 0).
  static RadialGrid from_breakpoints(std::span<const double> breakpoints, std::size_t points_per_panel);
  /// Grid resolving a field of characteristic width `length_scale` concentrated
  /// near the origin: r_max = min(60, 20 * scale), 64 panels of 32 points.
  /// Falls back to the default grid for scales of order one and above.
  static RadialGrid for_scale(double length_scale);

  std::span<const double> nodes() const { return nodes_; }
  /// Plain dr weights of the composite rule.
  std::span<const double> dr_weights() const { return dr_weights_; }
  /// dr weights times the volume density 4 pi sinh^2(r).
  std::span<const double> volume_weights() const { return volume_weights_; }
  std::size_t size() const { return nodes_.size(); }
  double r_max() const { return r_max_; }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  struct Empty {};
  explicit RadialGrid(Empty) {}

  std::vector<double> nodes_;
  std::vector<double> dr_weights_;
  std::vector<double> volume_weights_;
  double r_max_ = 0.0;
};

/// Uniform spectral grid lambda_j = j * lambda_max / (count - 1), j = 0..count-1.
struct FrequencyGrid {
  double lambda_max = 40.0;
  std::size_t count = 2048;

  std::vector<double> nodes() const;
  /// Trapezoid weights on the uniform grid.
  std::vector<double> trapezoid_weights() const;
};

/// Samples of a radial function on a RadialGrid.
class RadialField {
 public:
  RadialField() = default;
  RadialField(RadialGrid grid, std::vector<double> values);

  static RadialField sample(RadialGrid grid, const std::function<double(double)>& f);
  static RadialField zero(RadialGrid grid);

  const RadialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return grid_.volume_weights(); }
  std::size_t size() const { return values_.size(); }

  /// Integral over hyperbolic space, sum w_i f_i.
  double integrate() const;
  RadialField scaled(double factor) const;
  /// a * this + b * other, same grid required.
  RadialField combine(double a, const RadialField& other, double b) const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

/// Coefficients of a radial function against phi_lambda.
struct SpectralField {
  std::vector<double> freqs;
  std::vector<double> coeffs;
  /// f(r) = sum_j plancherel_weights[j] * coeffs[j] * phi_{freqs[j]}(r), and
  /// ||f||_2^2 = sum_j plancherel_weights[j] * coeffs[j]^2.
  std::vector<double> plancherel_weights;
  /// Set when the input field does not decay to the edge of its grid.
  bool truncation_warning = false;
  /// |f| * volume density at the outermost node, relative to its maximum.
  double tail_estimate = 0.0;

  /// Sum of plancherel_weights * coeffs^2.
  double plancherel_norm_squared() const;
};

/// Heat kernel of the scalar Laplacian,
///   p_t(r) = (4 pi t)^{-3/2} (r / sinh r) exp(-t - r^2 / (4t)).
/// Evaluated in log space; values below the double range underflow to +0.
double heat_kernel_value(double t, double r);
/// log p_t(r), finite for every t > 0, r >= 0.
double log_heat_kernel_value(double t, double r);

struct HeatKernelParams {
  double t = 1.0;
  double mu = 1.0;
};
/// Kernel of exp(t mu Delta), i.e. p_{mu t}(r).
double heat_kernel_value(const HeatKernelParams& params, double r);

/// Volume density 4 pi sinh^2(r).
double volume_weight(double r);
/// Closed-form volume of the geodesic ball of radius R: 2 pi (sinh R cosh R - R).
double ball_volume(double radius);

/// r / sinh r with the removable singularity at 0 and no overflow for large r.
double r_over_sinh(double r);
/// phi_lambda(r) = sin(lambda r) / (lambda sinh r).
double spherical_function(double lambda, double r);

/// (integral |f|^p dV)^{1/p}; p = infinity gives max |f_i|. p < 1 is rejected.
double lp_norm(const RadialField& f, double p);

SpectralField spherical_transform(const RadialField& f, const FrequencyGrid& freqs = {});
RadialField inverse_spherical_transform(const SpectralField& spectrum, const RadialGrid& grid);

/// Radial convolution via transform, multiply, inverse. Each operand is
/// transformed on its own grid; the result lives on f's grid. No regridding is
/// ever required.
RadialField convolve_radial(const RadialField& f, const RadialField& g, const FrequencyGrid& freqs = {});

/// p_{mu t} sampled on the grid.
RadialField heat_kernel_field(const RadialGrid& grid, const HeatKernelParams& params);
/// exp(-r^2 / (2 sigma^2)).
RadialField gaussian_bump(const RadialGrid& grid, double sigma);
/// Closed-form integral of exp(-r^2/(2 sigma^2)) over hyperbolic 3-space:
/// pi sqrt(2 pi) sigma (exp(2 sigma^2) - 1).
double gaussian_bump_mass(double sigma);
/// Unit-mass Gaussian of width `width`, approximating the Dirac mass at the origin.
RadialField delta_approximation(const RadialGrid& grid, double width);

/// ||f - g||_2 / ||g||_2 on a shared grid.
double relative_l2_difference(const RadialField& f, const RadialField& g);

/// Two-column CSV with header "r,value", 17 significant digits.
void write_csv(std::ostream& os, const RadialField& f);

}  // namespace hypflow::radial
