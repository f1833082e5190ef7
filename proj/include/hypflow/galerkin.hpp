#pragma once

// Truncated Galerkin surrogate of the mild Navier-Stokes equation.
//
//   du_k/dt = -mu (xi_k + g) u_k + N_k(u, u)
//
// Each mode k stands for a divergence-free eigenmode with Hodge eigenvalue xi_k;
// g is the additive dissipation shift (4 for the deformation Stokes operator,
// 2 for Bochner, 0 for the flat comparator). The quadratic term is assembled
// from triads whose three coefficients sum to zero, so sum_k u_k N_k(u, u) = 0
// for every state: the nonlinearity moves energy between modes but never creates
// it. This is a surrogate for the decay mechanism, not a PDE solver.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace hypflow::galerkin {

/// Contributes c[0] u_b u_c to N_a, c[1] u_a u_c to N_b and c[2] u_a u_b to N_c
/// for modes {a, b, c}, with c[0] + c[1] + c[2] = 0.
struct Triad {
  std::array<std::size_t, 3> modes{};
  std::array<double, 3> coeffs{};
  friend bool operator==(const Triad&, const Triad&) = default;
};

class GalerkinSystem {
 public:
  GalerkinSystem(std::vector<double> modes, double gap, double mu, std::vector<Triad> coupling,
                 std::uint64_t seed = 0);

  std::span<const double> modes() const { return modes_; }
  double gap() const { return gap_; }
  double mu() const { return mu_; }
  std::span<const Triad> coupling() const { return coupling_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return modes_.size(); }

  /// mu (xi_k + g)
  double dissipation(std::size_t k) const { return mu_ * (modes_[k] + gap_); }
  double min_dissipation() const;
  double max_dissipation() const;
  double min_mode() const;

  /// N(u, u) written into out (resized).
  void nonlinearity(std::span<const double> u, std::vector<double>& out) const;
  /// sum_k u_k N_k(u, u); zero up to rounding.
  double energy_residual(std::span<const double> u) const;
  /// Full right-hand side.
  void rhs(std::span<const double> u, std::vector<double>& out) const;

  friend bool operator==(const GalerkinSystem&, const GalerkinSystem&) = default;

 private:
  std::vector<double> modes_;
  double gap_;
  double mu_;
  std::vector<Triad> coupling_;
  std::uint64_t seed_;
};

struct BuildOptions {
  std::size_t n_modes = 32;
  /// 0 (flat comparator), 2 (Bochner) or 4 (deformation).
  double gap = 4.0;
  double mu = 0.1;
  /// Fraction of candidate triads kept.
  double coupling_density = 0.1;
  std::uint64_t seed = 1;
  /// Upper end Xi of the mode window.
  double xi_max = 10.0;
  /// Box size L of the flat comparator; its spectrum starts at (pi / L)^2.
  double box_length = 20.0;
};

/// Bottom of the flat comparator's discretised spectrum, (pi / L)^2.
double flat_spectrum_floor(double box_length);

/// Deterministic in the seed. The lowest mode is pinned at the bottom of the
/// window (0 for gap > 0, (pi/L)^2 for the flat comparator); the rest are
/// uniform in the window. Mode variates and coupling draw from the same stream
/// regardless of gap, so systems that differ only in gap share their coupling.
GalerkinSystem build_galerkin(const BuildOptions& options);

/// Random state of the given L2 norm, deterministic in the seed.
std::vector<double> random_state(std::size_t n, double norm, std::uint64_t seed);

struct Checkpoint {
  double t = 0.0;
  std::vector<double> state;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> l2_norms;
  std::vector<Checkpoint> checkpoints;
  double step_size = 0.0;
  int order = 4;
};

struct SimulateOptions {
  /// Store the full state every this many steps (and at the end).
  std::size_t checkpoint_every = 10;
};

/// Classical fourth-order Runge-Kutta with a fixed step. dt is lowered to
/// t_end / ceil(t_end / dt) so the run ends exactly at t_end. Requires
/// dt <= 0.5 / max dissipation. Throws NumericalError if the norm exceeds ten
/// times its initial value.
Trajectory simulate(const GalerkinSystem& system, std::span<const double> u0, double t_end, double dt,
                    const SimulateOptions& options = {});

/// Two-column CSV "t,l2_norm" with 17 significant digits.
void write_csv(std::ostream& os, const Trajectory& trajectory);

struct CompareConfig {
  std::vector<double> gaps{0.0, 2.0, 4.0};
  std::size_t n_modes = 32;
  double mu = 0.1;
  double coupling_density = 0.1;
  std::uint64_t seed = 1;
  double xi_max = 10.0;
  double box_length = 20.0;
  /// Initial L2 norm; default 1e-2 * mu * 4.
  double u0_norm = 4e-3;
  double t_end = 100.0;
  double dt = 0.05;
  /// Tail fit window is [tail_start * t_end, t_end].
  double tail_start = 0.5;
  double rate_tolerance = 0.05;
  double difference_tolerance = 0.10;
  /// Short-time comparison up to this time.
  double short_time = 1.0;
};

struct GapRun {
  double gap = 0.0;
  double xi_min = 0.0;
  /// mu (xi_min + g)
  double predicted_rate = 0.0;
  double fitted_rate = 0.0;
  double fit_residual = 0.0;
  /// mu * xi_min when gap = 0: the finite-size floor of the flat comparator.
  double finite_size_floor = 0.0;
  double final_norm = 0.0;
};

struct ShortTimeCheck {
  double gap_a = 0.0;
  double gap_b = 0.0;
  /// max over early times of ||u_a(t) - u_b(t)|| / (t ||u0||)
  double max_ratio = 0.0;
  /// mu * max_k |(xi_k^a + g_a) - (xi_k^b + g_b)|: the O(t) constant.
  double bound = 0.0;
  bool pass = false;
};

struct CompareReport {
  CompareConfig config;
  std::vector<GapRun> runs;
  double energy_residual = 0.0;
  bool ordered = false;
  /// Largest-gap run within rate_tolerance of its prediction.
  bool top_rate_matches = false;
  /// Rate difference between consecutive gaps equals mu * (gap difference)
  /// within difference_tolerance, when both gaps are positive.
  bool differences_match = false;
  std::vector<ShortTimeCheck> short_time;
  bool pass = false;
};

CompareReport compare_geometries(const CompareConfig& config);

}  // namespace hypflow::galerkin
