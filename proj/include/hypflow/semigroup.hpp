#pragma once

// Heat-type semigroups on radial functions and measurement of their decay.
//
// Each semigroup acts diagonally on the spherical transform with multiplier
//   exp(-t mu (1 + lambda^2 + shift)),
// where the shift is 0 for the scalar heat semigroup, 2 for the deformation
// semigroup exp(-2 mu t) exp(t mu Delta) and 4 for the Stokes surrogate.

#include <span>
#include <string>
#include <vector>

#include "hypflow/radial.hpp"
#include "hypflow/rational.hpp"

namespace hypflow::semigroup {

enum class Kind { scalar, deformation_scalar, stokes_surrogate };

std::string to_string(Kind kind);
/// Accepts "scalar", "deformation-scalar", "stokes-surrogate".
Kind parse_kind(const std::string& text);

class SemigroupSpec {
 public:
  explicit SemigroupSpec(Kind kind, double mu = 1.0);

  Kind kind() const { return kind_; }
  double mu() const { return mu_; }
  /// 0, 2 or 4 according to the kind.
  double shift() const;

 private:
  Kind kind_;
  double mu_;
};

/// Spectral-multiplier route. t = 0 returns f unchanged.
radial::RadialField apply(const SemigroupSpec& spec, const radial::RadialField& f, double t,
                          const radial::FrequencyGrid& freqs = {});

/// Same as calling apply for every time, sharing one forward transform.
std::vector<radial::RadialField> apply_many(const SemigroupSpec& spec, const radial::RadialField& f,
                                            std::span<const double> times,
                                            const radial::FrequencyGrid& freqs = {});

/// Convolution route, independent of the spherical transform. Uses
/// sinh(r) P_t f(r) = e^{-mu t (1 + shift)} (G * (sinh f))(r) with G the 1-D
/// Gaussian of variance 2 mu t acting on the odd extension. Accuracy is limited
/// by how well the grid resolves sqrt(mu t).
radial::RadialField apply_by_convolution(const SemigroupSpec& spec, const radial::RadialField& f, double t);

enum class DecayModel {
  /// log n = a - rate t - power log t
  exponential_power,
  /// log n = a - rate t
  exponential,
};

struct DecayFit {
  double rate = 0.0;
  /// norms ~ t^{-power}
  double power = 0.0;
  double log_prefactor = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  /// max_i |norm_i / model_i - 1|
  double residual = 0.0;
};

/// Least-squares fit of log norm against the chosen model. Needs at least four
/// samples, increasing positive times and positive norms.
DecayFit decay_rate_fit(std::span<const double> times, std::span<const double> norms,
                        DecayModel model = DecayModel::exponential_power);

struct LpLqOptions {
  std::vector<double> sigmas{0.25, 0.5, 1.0, 2.0};
  double long_t_min = 5.0;
  double long_t_max = 10.0;
  std::size_t long_samples = 11;
  double short_t_min = 1e-3;
  double short_t_max = 1e-2;
  std::size_t short_samples = 11;
  double rate_tolerance = 0.05;
  double power_tolerance = 0.05;
};

struct LpLqMember {
  double sigma = 0.0;
  DecayFit long_time;
  DecayFit short_time;
  /// Fitted algebraic exponent of t in the short-time ratio (= -short_time.power).
  double short_time_exponent = 0.0;
};

struct LpLqReport {
  Kind kind = Kind::scalar;
  double mu = 1.0;
  Exponent p = 2;
  Exponent q = 2;
  /// Smallest long-time rate over the test family.
  double fitted_rate = 0.0;
  /// Mean short-time exponent over the test family.
  double fitted_power = 0.0;
  double expected_gap = 0.0;
  double expected_power = 0.0;
  bool rate_pass = false;
  bool power_pass = false;
  bool pass = false;
  std::vector<LpLqMember> members;
};

/// Lower bound on the Lp decay rate for a kind, from the gaps module: scalar
/// bottom, deformation lower bound, or (Stokes surrogate at p = 2) the exact gap.
double expected_gap(Kind kind, const Exponent& p, double mu);

/// Measures ||P_t f||_q / ||f||_p on Gaussian bumps.
///
/// Long times use the fixed bumps exp(-r^2 / 2 sigma^2) and fit rate and power on
/// [long_t_min, long_t_max]; the rate must be at least the expected gap minus the
/// tolerance. Short times use the parabolically rescaled bumps with width
/// sigma * sqrt(mu t), whose ratio isolates the local scaling; the fitted exponent
/// must equal -(3/2)(1/p - 1/q) within the tolerance.
LpLqReport verify_lp_lq(const SemigroupSpec& spec, const Exponent& p, const Exponent& q,
                        const LpLqOptions& options = {});

}  // namespace hypflow::semigroup
