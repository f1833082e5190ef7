#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "hypflow/contraction.hpp"
#include "hypflow/error.hpp"
#include "hypflow/galerkin.hpp"
#include "hypflow/gaps.hpp"
#include "hypflow/kato.hpp"
#include "hypflow/radial.hpp"
#include "hypflow/semigroup.hpp"
#include "hypflow/serialize.hpp"

namespace hypflow::cli {

namespace {

using nlohmann::json;

enum class Format { table, json, csv };

struct Globals {
  std::optional<std::string> format;
  std::string output;
  std::uint64_t seed = 1;
};

Format resolve(const Globals& g, Format fallback, std::initializer_list<Format> allowed) {
  Format f = fallback;
  if (g.format) {
    if (*g.format == "table")
      f = Format::table;
    else if (*g.format == "json")
      f = Format::json;
    else
      f = Format::csv;
  }
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw ParameterError("format '" + g.format.value_or("") + "' is not available for this subcommand");
  return f;
}

Exponent exponent_arg(const std::string& text, const char* name) {
  Exponent p = Exponent::parse(text);
  if (p < Exponent(1)) throw ParameterError(fmt::format("--{} must be at least 1 (got {})", name, text));
  return p;
}

std::string fmt_bool(bool b) { return b ? "pass" : "FAIL"; }

// ---- gaps ------------------------------------------------------------------

struct GapsArgs {
  std::string p = "2";
  bool compare = false;
};

void gaps_cmd(const GapsArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json});
  const gaps::GapReport report = gaps::deformation_gap(exponent_arg(a.p, "p"));
  if (f == Format::json) {
    json j = report;
    if (a.compare) j = json{{"report", report}, {"laplacians", gaps::laplacian_comparison()}};
    out << j.dump(2) << '\n';
    return;
  }
  out << gaps::format_table(report);
  if (a.compare) out << '\n' << gaps::format_table(gaps::laplacian_comparison());
}

// ---- exponents -------------------------------------------------------------

struct ExponentsArgs {
  std::string p = "3";
  std::string q = "6";
};

void exponents_cmd(const ExponentsArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json});
  const kato::KatoExponents e = kato::exponents(exponent_arg(a.p, "p"), exponent_arg(a.q, "q"));
  if (f == Format::json) {
    out << json(e).dump(2) << '\n';
    return;
  }
  out << fmt::format("{:<20} {}\n", "p", e.p.str());
  out << fmt::format("{:<20} {}\n", "q", e.q.str());
  out << fmt::format("{:<20} {}\n", "beta", e.beta.str());
  out << fmt::format("{:<20} {}\n", "delta", e.delta.str());
  out << fmt::format("{:<20} {}\n", "scaling_exponent", e.scaling_exponent.str());
  out << fmt::format("{:<20} {}\n", "class", kato::to_string(e.integral_class));
  out << fmt::format("{:<20} {}\n", "admissible", e.admissible);
  out << fmt::format("{:<20} {}\n", "pointwise_divergent", e.pointwise_divergent);
}

// ---- kernel ----------------------------------------------------------------

struct KernelArgs {
  double t = 1.0;
  double mu = 1.0;
  bool check_mass = false;
  bool check_semigroup = false;
  double s = 0.5;
};

void kernel_cmd(const KernelArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json, Format::csv});
  if (!(a.t > 0.0)) throw ParameterError("--t must be positive");
  if (!(a.mu > 0.0)) throw ParameterError("--mu must be positive");
  if (!(a.s > 0.0)) throw ParameterError("--s must be positive");
  const radial::RadialGrid grid;
  const radial::HeatKernelParams params{a.t, a.mu};
  const radial::RadialField kernel = radial::heat_kernel_field(grid, params);

  if (f == Format::csv) {
    radial::write_csv(out, kernel);
    return;
  }

  const std::vector<double> radii{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  std::optional<double> mass;
  std::optional<double> ck_defect;
  if (a.check_mass) mass = kernel.integrate();
  if (a.check_semigroup) {
    const radial::RadialField second = radial::heat_kernel_field(grid, {a.s, a.mu});
    const radial::RadialField joint = radial::heat_kernel_field(grid, {a.t + a.s, a.mu});
    ck_defect = radial::relative_l2_difference(radial::convolve_radial(kernel, second), joint);
  }

  if (f == Format::json) {
    json values = json::array();
    for (double r : radii)
      values.push_back(json{{"r", r},
                            {"value", radial::heat_kernel_value(params, r)},
                            {"log_value", radial::log_heat_kernel_value(a.t * a.mu, r)}});
    json j{{"t", a.t}, {"mu", a.mu}, {"values", values}};
    if (mass) j["mass"] = *mass;
    if (ck_defect) j["semigroup"] = json{{"s", a.s}, {"relative_l2_defect", *ck_defect}};
    out << j.dump(2) << '\n';
    return;
  }

  out << fmt::format("{:>8} {:>24} {:>24}\n", "r", "p_t(r)", "log p_t(r)");
  for (double r : radii)
    out << fmt::format("{:>8} {:>24.17g} {:>24.17g}\n", r, radial::heat_kernel_value(params, r),
                       radial::log_heat_kernel_value(a.t * a.mu, r));
  if (mass) out << fmt::format("mass {:.17g}\n", *mass);
  if (ck_defect) out << fmt::format("semigroup defect (t + {}) {:.3e}\n", a.s, *ck_defect);
}

// ---- semigroup -------------------------------------------------------------

struct SemigroupArgs {
  std::string kind = "scalar";
  std::string p = "2";
  std::string q = "2";
  double mu = 1.0;
  std::optional<double> tolerance;
};

void semigroup_cmd(const SemigroupArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json});
  const semigroup::SemigroupSpec spec(semigroup::parse_kind(a.kind), a.mu);
  semigroup::LpLqOptions options;
  if (a.tolerance) options.rate_tolerance = options.power_tolerance = *a.tolerance;
  const auto report = semigroup::verify_lp_lq(spec, exponent_arg(a.p, "p"), exponent_arg(a.q, "q"), options);
  if (f == Format::json) {
    out << json(report).dump(2) << '\n';
    return;
  }
  out << fmt::format("kind {}  mu {}  p {}  q {}\n", semigroup::to_string(report.kind), report.mu, report.p.str(),
                     report.q.str());
  out << fmt::format("{:>8} {:>14} {:>14}\n", "sigma", "long rate", "short exponent");
  for (const auto& m : report.members)
    out << fmt::format("{:>8} {:>14.6f} {:>14.6f}\n", m.sigma, m.long_time.rate, m.short_time_exponent);
  out << fmt::format("decay rate      {:.6f} (gap {:.6f})  {}\n", report.fitted_rate, report.expected_gap,
                     fmt_bool(report.rate_pass));
  out << fmt::format("short exponent  {:.6f} (expected {:.6f})  {}\n", report.fitted_power, report.expected_power,
                     fmt_bool(report.power_pass));
}

// ---- integral --------------------------------------------------------------

struct IntegralArgs {
  std::string p = "3";
  std::string q = "6";
  double t = 1.0;
  double mu = 1.0;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<std::string> sweep;
  std::optional<double> tolerance;
};

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ParameterError("--sweep-t expects a:b:n");
  double a = 0.0;
  double b = 0.0;
  long n = 0;
  try {
    a = std::stod(parts[0]);
    b = std::stod(parts[1]);
    n = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ParameterError("--sweep-t expects numbers, got '" + text + "'");
  }
  if (!(a > 0.0 && b >= a) || n < 1) throw ParameterError("--sweep-t needs 0 < a <= b and n >= 1");
  std::vector<double> out;
  for (long i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(a * std::pow(b / a, frac));
  }
  return out;
}

void integral_cmd(const IntegralArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::csv, {Format::table, Format::json, Format::csv});
  const Exponent p = exponent_arg(a.p, "p");
  const Exponent q = exponent_arg(a.q, "q");
  kato::IntegralParams params;
  params.mu = a.mu;
  params.gamma = a.gamma;
  params.alpha = a.alpha;
  if (a.tolerance) params.abs_tolerance = *a.tolerance;
  const std::vector<double> times = a.sweep ? parse_sweep(*a.sweep) : std::vector<double>{a.t};
  std::vector<kato::IntegralResult> results;
  for (double t : times) results.push_back(kato::scaling_integral(t, p, q, params));

  if (f == Format::csv) {
    kato::write_csv(out, results);
  } else if (f == Format::json) {
    out << (results.size() == 1 ? json(results.front()) : json(results)).dump(2) << '\n';
  } else {
    out << fmt::format("{:>12} {:>24} {:>24}  {}\n", "t", "I(t)", "bound", "class");
    for (const auto& r : results)
      out << fmt::format("{:>12.6g} {:>24} {:>24}  {}\n", r.t, r.divergent ? "inf" : fmt::format("{:.17g}", r.value),
                         r.bound ? fmt::format("{:.17g}", *r.bound) : "-",
                         kato::to_string(r.exponents.integral_class));
  }
}

// ---- contraction -----------------------------------------------------------

struct ContractionArgs {
  double c1 = 1.0;
  double c2 = 1.0;
  double u0 = 0.2;
  std::size_t max_steps = 1'000'000;
};

void contraction_cmd(const ContractionArgs& a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json, Format::csv});
  const auto trace = contraction::majorant_iterate(a.c1, a.c2, a.u0, a.max_steps);
  if (f == Format::json) {
    out << json(trace).dump(2) << '\n';
  } else if (f == Format::csv) {
    out << "n,a\n";
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) out << fmt::format("{},{:.17g}\n", i, trace.iterates[i]);
  } else {
    const bool converged = trace.verdict == contraction::Verdict::converged;
    out << fmt::format("{:<12} {:.17g}\n", "epsilon0", trace.epsilon0);
    out << fmt::format("{:<12} {:.17g}\n", "u0_norm", trace.u0_norm);
    out << fmt::format("{:<12} {}\n", "verdict", converged ? "converged" : "diverged");
    if (converged) {
      out << fmt::format("{:<12} {:.17g}\n", "limit", trace.limit);
      out << fmt::format("{:<12} {:.17g}\n", "ball_radius", 2.0 * trace.c1 * trace.u0_norm);
    } else {
      out << fmt::format("{:<12} {}\n", "diverged_at", trace.diverged_at);
    }
    out << fmt::format("{:<12} {}\n", "iterations", trace.iterates.size());
  }
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::size_t modes = 32;
  double gap = 4.0;
  double mu = 0.1;
  double t_end = 100.0;
  double dt = 0.05;
  double density = 0.1;
  std::optional<double> u0_norm;
  double tail_start = 0.5;
};

void simulate_cmd(const SimulateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const Format f = resolve(g, Format::csv, {Format::table, Format::json, Format::csv});
  galerkin::BuildOptions build;
  build.n_modes = a.modes;
  build.gap = a.gap;
  build.mu = a.mu;
  build.coupling_density = a.density;
  build.seed = g.seed;
  const galerkin::GalerkinSystem system = galerkin::build_galerkin(build);
  const double norm = a.u0_norm.value_or(1e-2 * a.mu * std::max(a.gap, 1.0));
  const auto u0 = galerkin::random_state(system.size(), norm, g.seed + 1);
  const galerkin::Trajectory traj = galerkin::simulate(system, u0, a.t_end, a.dt);

  std::vector<double> tail_t;
  std::vector<double> tail_n;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= a.tail_start * a.t_end && traj.times[i] > 0.0 && traj.l2_norms[i] > 0.0) {
      tail_t.push_back(traj.times[i]);
      tail_n.push_back(traj.l2_norms[i]);
    }
  }
  std::optional<semigroup::DecayFit> fit;
  if (tail_t.size() >= 4) fit = semigroup::decay_rate_fit(tail_t, tail_n, semigroup::DecayModel::exponential);

  if (f == Format::csv) {
    galerkin::write_csv(out, traj);
    if (fit)
      err << fmt::format("fitted tail rate {:.6f}, predicted {:.6f}\n", fit->rate, system.min_dissipation());
  } else if (f == Format::json) {
    json j{{"gap", a.gap},
           {"mu", a.mu},
           {"modes", a.modes},
           {"seed", g.seed},
           {"xi_min", system.min_mode()},
           {"predicted_rate", system.min_dissipation()},
           {"fit", fit ? json(*fit) : json(nullptr)},
           {"trajectory", traj}};
    out << j.dump(2) << '\n';
  } else {
    out << fmt::format("{:<16} {}\n", "modes", system.size());
    out << fmt::format("{:<16} {}\n", "gap", a.gap);
    out << fmt::format("{:<16} {:.6g}\n", "xi_min", system.min_mode());
    out << fmt::format("{:<16} {:.6g}\n", "step", traj.step_size);
    out << fmt::format("{:<16} {:.6g}\n", "initial_norm", traj.l2_norms.front());
    out << fmt::format("{:<16} {:.6g}\n", "final_norm", traj.l2_norms.back());
    out << fmt::format("{:<16} {:.6f}\n", "predicted_rate", system.min_dissipation());
    if (fit) out << fmt::format("{:<16} {:.6f}\n", "fitted_rate", fit->rate);
  }
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::vector<double> gaps{0.0, 2.0, 4.0};
  galerkin::CompareConfig config;
};

void compare_cmd(CompareArgs a, const Globals& g, std::ostream& out) {
  const Format f = resolve(g, Format::table, {Format::table, Format::json});
  a.config.gaps = a.gaps;
  a.config.seed = g.seed;
  const auto report = galerkin::compare_geometries(a.config);
  if (f == Format::json) {
    out << json(report).dump(2) << '\n';
    return;
  }
  out << fmt::format("{:>6} {:>10} {:>14} {:>14} {:>14}\n", "gap", "xi_min", "predicted", "fitted", "floor");
  for (const auto& r : report.runs)
    out << fmt::format("{:>6} {:>10.6f} {:>14.6f} {:>14.6f} {:>14}\n", r.gap, r.xi_min, r.predicted_rate,
                       r.fitted_rate, r.gap == 0.0 ? fmt::format("{:.6f}", r.finite_size_floor) : "-");
  out << fmt::format("ordered rates          {}\n", fmt_bool(report.ordered));
  out << fmt::format("top rate vs prediction {}\n", fmt_bool(report.top_rate_matches));
  out << fmt::format("rate differences       {}\n", fmt_bool(report.differences_match));
  out << fmt::format("energy residual        {:.3e}\n", report.energy_residual);
  for (const auto& s : report.short_time)
    out << fmt::format("short time gap {} vs {}: ratio {:.6f} <= 1.1 * {:.6f}  {}\n", s.gap_a, s.gap_b, s.max_ratio,
                       s.bound, fmt_bool(s.pass));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral gaps, heat semigroups and scaling integrals on hyperbolic 3-space", "hypflow"};
  app.fallthrough();
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Globals globals;
  app.add_option("--format", globals.format, "Output format: table, json or csv (default depends on subcommand)")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--output,-o", globals.output, "Write data to this file instead of standard output");
  app.add_option("--seed", globals.seed, "Seed for randomised constructions");

  GapsArgs gaps_args;
  auto* gaps_app = app.add_subcommand("gaps", "Spectral gaps for an exponent p");
  gaps_app->add_option("--p", gaps_args.p, "Exponent p in [1, inf]");
  gaps_app->add_flag("--compare-laplacians", gaps_args.compare, "Also print the Hodge/Bochner/deformation table");

  ExponentsArgs exp_args;
  auto* exp_app = app.add_subcommand("exponents", "Time-weight exponents for a pair (p, q)");
  exp_app->add_option("--p", exp_args.p, "Data exponent p");
  exp_app->add_option("--q", exp_args.q, "Working exponent q");

  KernelArgs kernel_args;
  auto* kernel_app = app.add_subcommand("kernel", "Heat kernel values and invariant checks");
  kernel_app->add_option("--t", kernel_args.t, "Time t > 0");
  kernel_app->add_option("--mu", kernel_args.mu, "Viscosity mu > 0");
  kernel_app->add_option("--s", kernel_args.s, "Second time for --check-semigroup");
  kernel_app->add_flag("--check-mass", kernel_args.check_mass, "Integrate the kernel over space");
  kernel_app->add_flag("--check-semigroup", kernel_args.check_semigroup, "Relative L2 defect of p_t * p_s vs p_{t+s}");

  SemigroupArgs sg_args;
  auto* sg_app = app.add_subcommand("semigroup", "Measure Lp -> Lq decay on Gaussian bumps");
  sg_app->add_option("--kind", sg_args.kind, "scalar, deformation-scalar or stokes-surrogate");
  sg_app->add_option("--p", sg_args.p, "Source exponent p");
  sg_app->add_option("--q", sg_args.q, "Target exponent q >= p");
  sg_app->add_option("--mu", sg_args.mu, "Viscosity mu > 0");
  sg_app->add_option("--tolerance", sg_args.tolerance, "Override the rate and exponent tolerances (default 0.05)");

  IntegralArgs int_args;
  auto* int_app = app.add_subcommand("integral", "Evaluate the scaling integral I(t)");
  int_app->add_option("--p", int_args.p, "Data exponent p");
  int_app->add_option("--q", int_args.q, "Working exponent q");
  int_app->add_option("--t", int_args.t, "Time t > 0");
  int_app->add_option("--mu", int_args.mu, "Viscosity mu > 0");
  int_app->add_option("--gamma", int_args.gamma, "Gap in the kernel (default: bilinear gap at r = q/2)");
  int_app->add_option("--alpha", int_args.alpha, "Weight rate alpha (default: mu * gamma)");
  int_app->add_option("--sweep-t", int_args.sweep, "Log-spaced times a:b:n instead of --t");
  int_app->add_option("--tolerance", int_args.tolerance, "Absolute quadrature tolerance (default 1e-8)");

  ContractionArgs con_args;
  auto* con_app = app.add_subcommand("contraction", "Iterate the scalar Picard majorant");
  con_app->add_option("--c1", con_args.c1, "Linear constant C1 > 0 (conventional default 1)");
  con_app->add_option("--c2", con_args.c2, "Bilinear constant C2 > 0 (conventional default 1)");
  con_app->add_option("--u0", con_args.u0, "Norm of the initial datum");
  con_app->add_option("--max-steps", con_args.max_steps, "Iteration budget");

  SimulateArgs sim_args;
  auto* sim_app = app.add_subcommand("simulate", "Integrate the Galerkin surrogate for one gap");
  sim_app->add_option("--modes", sim_args.modes, "Number of modes");
  sim_app->add_option("--gap", sim_args.gap, "Dissipation shift: 0, 2 or 4");
  sim_app->add_option("--mu", sim_args.mu, "Viscosity mu > 0");
  sim_app->add_option("--t-end", sim_args.t_end, "Final time");
  sim_app->add_option("--dt", sim_args.dt, "RK4 step");
  sim_app->add_option("--density", sim_args.density, "Fraction of triads kept");
  sim_app->add_option("--u0-norm", sim_args.u0_norm, "Initial L2 norm (default 1e-2 * mu * max(gap, 1))");
  sim_app->add_option("--tail-start", sim_args.tail_start, "Tail fit starts at this fraction of t-end");

  CompareArgs cmp_args;
  auto* cmp_app = app.add_subcommand("compare", "Run the surrogate for several gaps with shared coupling and data");
  cmp_app->add_option("--gaps", cmp_args.gaps, "Comma-separated gaps")->delimiter(',');
  cmp_app->add_option("--modes", cmp_args.config.n_modes, "Number of modes");
  cmp_app->add_option("--mu", cmp_args.config.mu, "Viscosity mu > 0");
  cmp_app->add_option("--t-end", cmp_args.config.t_end, "Final time");
  cmp_app->add_option("--dt", cmp_args.config.dt, "RK4 step");
  cmp_app->add_option("--density", cmp_args.config.coupling_density, "Fraction of triads kept");
  cmp_app->add_option("--u0-norm", cmp_args.config.u0_norm, "Initial L2 norm");
  cmp_app->add_option("--box-length", cmp_args.config.box_length, "Box size L of the flat comparator");
  cmp_app->add_option("--tolerance", cmp_args.config.rate_tolerance, "Relative tolerance on the top rate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  std::ofstream file;
  if (!globals.output.empty()) {
    file.open(globals.output);
    if (!file) {
      err << "error: cannot open '" << globals.output << "' for writing\n";
      return 1;
    }
  }
  std::ostream& data = globals.output.empty() ? out : file;

  try {
    if (gaps_app->parsed()) gaps_cmd(gaps_args, globals, data);
    if (exp_app->parsed()) exponents_cmd(exp_args, globals, data);
    if (kernel_app->parsed()) kernel_cmd(kernel_args, globals, data);
    if (sg_app->parsed()) semigroup_cmd(sg_args, globals, data);
    if (int_app->parsed()) integral_cmd(int_args, globals, data);
    if (con_app->parsed()) contraction_cmd(con_args, globals, data);
    if (sim_app->parsed()) simulate_cmd(sim_args, globals, data, err);
    if (cmp_app->parsed()) compare_cmd(cmp_args, globals, data);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  data.flush();
  return 0;
}

}  // namespace hypflow::cli
