#include "hypflow/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <ostream>
#include <random>

#include "hypflow/error.hpp"
#include "hypflow/parallel.hpp"
#include "hypflow/semigroup.hpp"

namespace hypflow::galerkin {

GalerkinSystem::GalerkinSystem(std::vector<double> modes, double gap, double mu, std::vector<Triad> coupling,
                               std::uint64_t seed)
    : modes_(std::move(modes)), gap_(gap), mu_(mu), coupling_(std::move(coupling)), seed_(seed) {
  if (modes_.empty()) throw ParameterError("Galerkin system needs at least one mode");
  if (!(mu_ > 0.0)) throw ParameterError("Galerkin system needs mu > 0");
  if (!(gap_ >= 0.0)) throw ParameterError("Galerkin system needs gap >= 0");
  for (double xi : modes_)
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw ParameterError("mode eigenvalues must be finite and nonnegative");
  for (const auto& t : coupling_) {
    for (std::size_t m : t.modes)
      if (m >= modes_.size()) throw ParameterError("triad references a mode out of range");
    const double sum = t.coeffs[0] + t.coeffs[1] + t.coeffs[2];
    const double scale = std::abs(t.coeffs[0]) + std::abs(t.coeffs[1]) + std::abs(t.coeffs[2]);
    if (std::abs(sum) > 1e-14 * std::max(scale, 1.0)) throw ParameterError("triad coefficients must sum to zero");
  }
}

double GalerkinSystem::min_mode() const { return *std::min_element(modes_.begin(), modes_.end()); }
double GalerkinSystem::min_dissipation() const { return mu_ * (min_mode() + gap_); }
double GalerkinSystem::max_dissipation() const {
  return mu_ * (*std::max_element(modes_.begin(), modes_.end()) + gap_);
}

void GalerkinSystem::nonlinearity(std::span<const double> u, std::vector<double>& out) const {
  if (u.size() != modes_.size()) throw ParameterError("state size does not match the system");
  out.assign(modes_.size(), 0.0);
  for (const auto& t : coupling_) {
    const auto [a, b, c] = t.modes;
    out[a] += t.coeffs[0] * u[b] * u[c];
    out[b] += t.coeffs[1] * u[a] * u[c];
    out[c] += t.coeffs[2] * u[a] * u[b];
  }
}

double GalerkinSystem::energy_residual(std::span<const double> u) const {
  std::vector<double> n;
  nonlinearity(u, n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) sum += u[k] * n[k];
  return sum;
}

void GalerkinSystem::rhs(std::span<const double> u, std::vector<double>& out) const {
  nonlinearity(u, out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= dissipation(k) * u[k];
}

double flat_spectrum_floor(double box_length) {
  if (!(box_length > 0.0)) throw ParameterError("box length must be positive");
  const double k = std::numbers::pi / box_length;
  return k * k;
}

GalerkinSystem build_galerkin(const BuildOptions& options) {
  if (options.n_modes < 2) throw ParameterError("Galerkin system needs n_modes >= 2");
  if (options.gap != 0.0 && options.gap != 2.0 && options.gap != 4.0)
    throw ParameterError("gap must be one of 0, 2, 4");
  if (!(options.coupling_density > 0.0 && options.coupling_density <= 1.0))
    throw ParameterError("coupling density must lie in (0, 1]");
  if (!(options.mu > 0.0)) throw ParameterError("Galerkin system needs mu > 0");
  const double lo = options.gap == 0.0 ? flat_spectrum_floor(options.box_length) : 0.0;
  if (!(options.xi_max > lo)) throw ParameterError("xi_max must exceed the bottom of the mode window");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> variates(options.n_modes - 1);
  for (double& v : variates) v = unit(rng);
  std::sort(variates.begin(), variates.end());
  std::vector<double> modes;
  modes.reserve(options.n_modes);
  modes.push_back(lo);
  for (double v : variates) modes.push_back(lo + (options.xi_max - lo) * v);

  // Candidate triads: multisets {a <= b <= c} that are not a single repeated mode.
  std::vector<std::array<std::size_t, 3>> candidates;
  const std::size_t n = options.n_modes;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        if (!(a == b && b == c)) candidates.push_back({a, b, c});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const auto keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(options.coupling_density * static_cast<double>(candidates.size()))));
  candidates.resize(std::min(keep, candidates.size()));
  std::sort(candidates.begin(), candidates.end());

  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Triad> coupling;
  coupling.reserve(candidates.size());
  for (const auto& modes_abc : candidates) {
    Triad t;
    t.modes = modes_abc;
    for (double& c : t.coeffs) c = coeff(rng);
    // Remove the mean so the coefficients sum to zero; the last one absorbs the
    // rounding so the sum is zero to the last bit.
    const double mean = (t.coeffs[0] + t.coeffs[1] + t.coeffs[2]) / 3.0;
    t.coeffs[0] -= mean;
    t.coeffs[1] -= mean;
    t.coeffs[2] = -(t.coeffs[0] + t.coeffs[1]);
    coupling.push_back(t);
  }
  return GalerkinSystem(std::move(modes), options.gap, options.mu, std::move(coupling), options.seed);
}

std::vector<double> random_state(std::size_t n, double norm, std::uint64_t seed) {
  if (!(norm >= 0.0)) throw ParameterError("state norm must be nonnegative");
  std::vector<double> u(n, 0.0);
  if (norm == 0.0 || n == 0) return u;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sq = 0.0;
  for (double& x : u) {
    x = normal(rng);
    sq += x * x;
  }
  const double scale = norm / std::sqrt(sq);
  for (double& x : u) x *= scale;
  return u;
}

namespace {

double l2(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Trajectory simulate(const GalerkinSystem& system, std::span<const double> u0, double t_end, double dt,
                    const SimulateOptions& options) {
  if (u0.size() != system.size()) throw ParameterError("initial state size does not match the system");
  if (!(dt > 0.0)) throw ParameterError("time step must be positive");
  if (!(t_end > 0.0)) throw ParameterError("end time must be positive");
  if (dt > 0.5 / system.max_dissipation())
    throw ParameterError(fmt::format("time step {} exceeds the stability cap {}", dt, 0.5 / system.max_dissipation()));
  if (options.checkpoint_every == 0) throw ParameterError("checkpoint interval must be positive");

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.step_size = h;
  traj.times.reserve(steps + 1);
  traj.l2_norms.reserve(steps + 1);

  std::vector<double> u(u0.begin(), u0.end());
  const double initial = l2(u);
  traj.times.push_back(0.0);
  traj.l2_norms.push_back(initial);
  traj.checkpoints.push_back({0.0, u});

  const std::size_t n = u.size();
  std::vector<double> k1, k2, k3, k4, tmp(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    system.rhs(u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
    system.rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
    system.rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
    system.rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double t = h * static_cast<double>(step);
    const double norm = l2(u);
    if (!std::isfinite(norm) || norm > 10.0 * initial)
      throw NumericalError(fmt::format("integrator failure at t = {}: norm {} vs initial {}", t, norm, initial));
    traj.times.push_back(t);
    traj.l2_norms.push_back(norm);
    if (step % options.checkpoint_every == 0 || step == steps) traj.checkpoints.push_back({t, u});
  }
  return traj;
}

void write_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "t,l2_norm\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i)
    os << fmt::format("{:.17g},{:.17g}\n", trajectory.times[i], trajectory.l2_norms[i]);
}

namespace {

semigroup::DecayFit tail_fit(const Trajectory& traj, double tail_start) {
  const double t0 = tail_start * traj.times.back();
  std::vector<double> times;
  std::vector<double> norms;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= t0 && traj.times[i] > 0.0) {
      times.push_back(traj.times[i]);
      norms.push_back(traj.l2_norms[i]);
    }
  }
  return semigroup::decay_rate_fit(times, norms, semigroup::DecayModel::exponential);
}

}  // namespace

CompareReport compare_geometries(const CompareConfig& config) {
  if (config.gaps.size() < 2) throw ParameterError("comparison needs at least two gaps");
  if (!(config.tail_start > 0.0 && config.tail_start < 1.0)) throw ParameterError("tail_start must lie in (0, 1)");
  std::vector<double> gaps = config.gaps;
  std::sort(gaps.begin(), gaps.end());
  if (std::adjacent_find(gaps.begin(), gaps.end()) != gaps.end()) throw ParameterError("gaps must be distinct");

  CompareReport report;
  report.config = config;
  report.config.gaps = gaps;

  std::vector<GalerkinSystem> systems;
  for (double g : gaps) {
    BuildOptions b;
    b.n_modes = config.n_modes;
    b.gap = g;
    b.mu = config.mu;
    b.coupling_density = config.coupling_density;
    b.seed = config.seed;
    b.xi_max = config.xi_max;
    b.box_length = config.box_length;
    systems.push_back(build_galerkin(b));
  }
  const std::vector<double> u0 = random_state(config.n_modes, config.u0_norm, config.seed + 1);

  // Energy conservation of the shared coupling on random states.
  {
    std::mt19937_64 rng(config.seed + 2);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> u(config.n_modes);
    for (int trial = 0; trial < 1000; ++trial) {
      for (double& x : u) x = normal(rng);
      const double norm = l2(u);
      report.energy_residual =
          std::max(report.energy_residual, std::abs(systems.front().energy_residual(u)) / (norm * norm * norm));
    }
  }

  const auto early_steps = static_cast<std::size_t>(std::ceil(config.short_time / config.dt - 1e-9));
  std::vector<Trajectory> trajectories(systems.size());
  std::vector<Trajectory> early(systems.size());
  parallel_for(systems.size(), [&](std::size_t i) {
    trajectories[i] = simulate(systems[i], u0, config.t_end, config.dt);
    SimulateOptions every_step;
    every_step.checkpoint_every = 1;
    early[i] = simulate(systems[i], u0, config.dt * static_cast<double>(early_steps), config.dt, every_step);
  });

  for (std::size_t i = 0; i < systems.size(); ++i) {
    GapRun run;
    run.gap = gaps[i];
    run.xi_min = systems[i].min_mode();
    run.predicted_rate = systems[i].min_dissipation();
    const auto fit = tail_fit(trajectories[i], config.tail_start);
    run.fitted_rate = fit.rate;
    run.fit_residual = fit.residual;
    if (gaps[i] == 0.0) run.finite_size_floor = config.mu * run.xi_min;
    run.final_norm = trajectories[i].l2_norms.back();
    report.runs.push_back(run);
  }

  report.ordered = true;
  report.differences_match = true;
  for (std::size_t i = 1; i < report.runs.size(); ++i) {
    const auto& lo = report.runs[i - 1];
    const auto& hi = report.runs[i];
    if (!(hi.fitted_rate > lo.fitted_rate)) report.ordered = false;
    if (lo.gap > 0.0) {
      const double expected = config.mu * (hi.gap - lo.gap);
      if (std::abs((hi.fitted_rate - lo.fitted_rate) - expected) > config.difference_tolerance * expected)
        report.differences_match = false;
    }
  }
  const auto& top = report.runs.back();
  report.top_rate_matches =
      std::abs(top.fitted_rate - top.predicted_rate) <= config.rate_tolerance * top.predicted_rate;

  // Short times: the vector fields differ by a bounded linear term, so the
  // trajectories separate at most linearly in t.
  const std::size_t top_index = systems.size() - 1;
  for (std::size_t i = 0; i < top_index; ++i) {
    ShortTimeCheck check;
    check.gap_a = gaps[top_index];
    check.gap_b = gaps[i];
    double max_shift = 0.0;
    for (std::size_t k = 0; k < config.n_modes; ++k)
      max_shift = std::max(max_shift, std::abs(systems[top_index].dissipation(k) - systems[i].dissipation(k)));
    check.bound = max_shift;
    const auto& a = early[top_index].checkpoints;
    const auto& b = early[i].checkpoints;
    for (std::size_t s = 1; s < a.size(); ++s) {
      double diff = 0.0;
      for (std::size_t k = 0; k < config.n_modes; ++k) {
        const double d = a[s].state[k] - b[s].state[k];
        diff += d * d;
      }
      check.max_ratio = std::max(check.max_ratio, std::sqrt(diff) / (a[s].t * config.u0_norm));
    }
    check.pass = check.max_ratio <= 1.1 * check.bound;
    report.short_time.push_back(check);
  }

  report.pass = report.ordered && report.top_rate_matches && report.differences_match && report.energy_residual <= 1e-12;
  for (const auto& c : report.short_time) report.pass = report.pass && c.pass;
  return report;
}

}  // namespace hypflow::galerkin
