#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hypflow/error.hpp"
#include "hypflow/galerkin.hpp"
#include "hypflow/semigroup.hpp"
#include "oracles.hpp"

using namespace hypflow::galerkin;

namespace {

double norm(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return std::sqrt(s);
}

std::vector<double> random_vector(oracle::Gen& gen, std::size_t n) {
  std::vector<double> u(n);
  for (double& x : u) x = gen.normal();
  return u;
}

}  // namespace

TEST_CASE("two-mode system conserves energy to rounding") {
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    BuildOptions o;
    o.n_modes = 2;
    o.seed = seed;
    const GalerkinSystem sys = build_galerkin(o);
    CHECK(sys.coupling().size() >= 1);
    oracle::Gen gen(seed);
    for (int i = 0; i < 100; ++i) {
      const auto u = random_vector(gen, 2);
      CHECK(std::abs(sys.energy_residual(u)) <= 1e-15 * std::pow(norm(u), 3));
    }
  }
}

TEST_CASE("property: energy conservation on 1000 random states") {
  const GalerkinSystem sys = build_galerkin({});
  oracle::Gen gen(71);
  for (int i = 0; i < 1000; ++i) {
    auto u = random_vector(gen, sys.size());
    const double scale = std::exp(gen.uniform(-5.0, 5.0));
    for (double& x : u) x *= scale;
    CHECK(std::abs(sys.energy_residual(u)) <= 1e-12 * std::pow(norm(u), 3));
  }
}

TEST_CASE("triad coefficients sum to zero exactly") {
  const GalerkinSystem sys = build_galerkin({});
  for (const Triad& t : sys.coupling()) CHECK(t.coeffs[0] + t.coeffs[1] + t.coeffs[2] == 0.0);
  // Ten percent of the 5952 candidate multisets {a <= b <= c}, not all equal, for 32 modes.
  CHECK(sys.coupling().size() == 595);
}

TEST_CASE("construction is deterministic in the seed") {
  BuildOptions o;
  o.seed = 7;
  CHECK(build_galerkin(o) == build_galerkin(o));
  BuildOptions other = o;
  other.seed = 8;
  CHECK_FALSE(build_galerkin(o) == build_galerkin(other));
}

TEST_CASE("gaps share modes above zero and coupling") {
  BuildOptions o;
  o.gap = 4.0;
  const GalerkinSystem g4 = build_galerkin(o);
  o.gap = 2.0;
  const GalerkinSystem g2 = build_galerkin(o);
  o.gap = 0.0;
  const GalerkinSystem g0 = build_galerkin(o);
  CHECK(std::equal(g4.modes().begin(), g4.modes().end(), g2.modes().begin()));
  CHECK(std::equal(g4.coupling().begin(), g4.coupling().end(), g2.coupling().begin()));
  CHECK(std::equal(g4.coupling().begin(), g4.coupling().end(), g0.coupling().begin()));
  CHECK(g0.min_mode() == doctest::Approx(flat_spectrum_floor(20.0)));
  CHECK(flat_spectrum_floor(20.0) == doctest::Approx(std::pow(std::numbers::pi / 20.0, 2)));
}

TEST_CASE("dissipation bounds") {
  const GalerkinSystem sys = build_galerkin({});
  CHECK(sys.min_dissipation() == doctest::Approx(0.1 * (sys.min_mode() + 4.0)));
  CHECK(sys.min_dissipation() >= 0.4);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    CHECK(sys.modes()[k] >= 0.0);
    CHECK(sys.modes()[k] <= 10.0);
    CHECK(sys.dissipation(k) >= 0.1 * 4.0);
  }
}

TEST_CASE("construction validation") {
  BuildOptions o;
  o.n_modes = 1;
  CHECK_THROWS_AS(build_galerkin(o), hypflow::ParameterError);
  o = {};
  o.gap = 3.0;
  CHECK_THROWS_AS(build_galerkin(o), hypflow::ParameterError);
  o = {};
  o.coupling_density = 0.0;
  CHECK_THROWS_AS(build_galerkin(o), hypflow::ParameterError);
  o.coupling_density = 1.5;
  CHECK_THROWS_AS(build_galerkin(o), hypflow::ParameterError);
  o = {};
  o.mu = -1.0;
  CHECK_THROWS_AS(build_galerkin(o), hypflow::ParameterError);
  CHECK_THROWS_AS(GalerkinSystem({0.0, 1.0}, 4.0, 0.1, {Triad{{0, 1, 1}, {1.0, 1.0, 1.0}}}), hypflow::ParameterError);
  CHECK_THROWS_AS(GalerkinSystem({0.0, 1.0}, 4.0, 0.1, {Triad{{0, 1, 5}, {1.0, -1.0, 0.0}}}), hypflow::ParameterError);
}

TEST_CASE("zero data stays zero") {
  const GalerkinSystem sys = build_galerkin({});
  const std::vector<double> u0(sys.size(), 0.0);
  const Trajectory tr = simulate(sys, u0, 5.0, 0.05);
  for (double n : tr.l2_norms) CHECK(n == 0.0);
}

TEST_CASE("linear single mode decays at mu (xi + g)") {
  const GalerkinSystem sys({0.0}, 4.0, 0.1, {});
  const std::vector<double> u0{1.0};
  const Trajectory tr = simulate(sys, u0, 20.0, 0.05);
  CHECK(tr.order == 4);
  CHECK(tr.step_size == doctest::Approx(0.05));
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    CHECK(tr.l2_norms[i] == doctest::Approx(std::exp(-0.4 * tr.times[i])).epsilon(1e-9));
}

TEST_CASE("RK4 is fourth order") {
  const GalerkinSystem sys({1.0, 3.0}, 2.0, 0.5, {Triad{{0, 0, 1}, {1.0, -0.5, -0.5}}});
  const std::vector<double> u0{0.8, -0.6};
  const double ref = simulate(sys, u0, 2.0, 0.0025).l2_norms.back();
  const double e1 = std::abs(simulate(sys, u0, 2.0, 0.1).l2_norms.back() - ref);
  const double e2 = std::abs(simulate(sys, u0, 2.0, 0.05).l2_norms.back() - ref);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("step is adjusted to land on t_end and stability is enforced") {
  const GalerkinSystem sys = build_galerkin({});
  const auto u0 = random_state(sys.size(), 1e-3, 3);
  const Trajectory tr = simulate(sys, u0, 1.0, 0.3);
  CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tr.step_size == doctest::Approx(0.25));
  CHECK_THROWS_AS(simulate(sys, u0, 1.0, 0.5 / sys.max_dissipation() * 1.01), hypflow::ParameterError);
  CHECK_THROWS_AS(simulate(sys, u0, 1.0, 0.0), hypflow::ParameterError);
  CHECK_THROWS_AS(simulate(sys, std::vector<double>(3, 0.0), 1.0, 0.05), hypflow::ParameterError);
}

TEST_CASE("an unresolved nonlinear time scale is reported as a numerical failure") {
  const GalerkinSystem sys({0.0, 0.0, 0.0}, 0.0, 1e-3, {Triad{{0, 1, 2}, {2.0, -1.0, -1.0}}});
  const std::vector<double> u0{1e3, 1e3, 1e3};
  CHECK_THROWS_AS(simulate(sys, u0, 50.0, 0.01), hypflow::NumericalError);
}

TEST_CASE("small data: strictly decreasing norms and the energy inequality") {
  for (double gap : {0.0, 2.0, 4.0}) {
    BuildOptions o;
    o.gap = gap;
    const GalerkinSystem sys = build_galerkin(o);
    const auto u0 = random_state(sys.size(), 1e-2 * 0.1 * std::max(gap, 1.0), 5);
    const Trajectory tr = simulate(sys, u0, 30.0, 0.05);
    const double decay = std::exp(-sys.min_dissipation() * tr.step_size);
    for (std::size_t i = 1; i < tr.l2_norms.size(); ++i) {
      CHECK(tr.l2_norms[i] < tr.l2_norms[i - 1]);
      CHECK(tr.l2_norms[i] <= decay * tr.l2_norms[i - 1] * (1.0 + 1e-9));
      CHECK(tr.l2_norms[i] <= std::exp(-sys.min_dissipation() * tr.times[i]) * tr.l2_norms[0] * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("small data tail rate matches mu (xi_min + 4)") {
  const GalerkinSystem sys = build_galerkin({});
  const auto u0 = random_state(sys.size(), 1e-2 * 0.1 * 4.0, 2);
  const Trajectory tr = simulate(sys, u0, 100.0, 0.05);
  std::vector<double> t;
  std::vector<double> n;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.times[i] >= 50.0) {
      t.push_back(tr.times[i]);
      n.push_back(tr.l2_norms[i]);
    }
  }
  const auto fit = hypflow::semigroup::decay_rate_fit(t, n, hypflow::semigroup::DecayModel::exponential);
  CHECK(std::abs(fit.rate - sys.min_dissipation()) <= 0.05 * sys.min_dissipation());
}

TEST_CASE("checkpoints and CSV") {
  const GalerkinSystem sys = build_galerkin({});
  const auto u0 = random_state(sys.size(), 1e-3, 4);
  SimulateOptions opts;
  opts.checkpoint_every = 7;
  const Trajectory tr = simulate(sys, u0, 1.0, 0.05, opts);
  CHECK(tr.checkpoints.front().t == 0.0);
  CHECK(tr.checkpoints.back().t == doctest::Approx(1.0));
  CHECK(tr.checkpoints.size() == 4);  // 0, 7, 14, 20
  CHECK(norm(tr.checkpoints.back().state) == doctest::Approx(tr.l2_norms.back()).epsilon(1e-14));
  std::ostringstream os;
  write_csv(os, tr);
  const std::string csv = os.str();
  CHECK(csv.rfind("t,l2_norm\n0,", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == tr.times.size() + 1);
}

TEST_CASE("random states have the requested norm and are deterministic") {
  const auto a = random_state(16, 0.3, 9);
  CHECK(norm(a) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(a == random_state(16, 0.3, 9));
  CHECK_FALSE(a == random_state(16, 0.3, 10));
}

TEST_CASE("geometry comparison") {
  const CompareReport r = compare_geometries({});
  REQUIRE(r.runs.size() == 3);
  CHECK(r.runs[0].gap == 0.0);
  CHECK(r.runs[2].gap == 4.0);
  CHECK(r.runs[2].fitted_rate > r.runs[1].fitted_rate);
  CHECK(r.runs[1].fitted_rate > r.runs[0].fitted_rate);
  CHECK(std::abs(r.runs[2].fitted_rate - 0.1 * (r.runs[2].xi_min + 4.0)) <= 0.05 * 0.1 * (r.runs[2].xi_min + 4.0));
  CHECK(std::abs((r.runs[2].fitted_rate - r.runs[1].fitted_rate) - 0.2) <= 0.02);
  CHECK(r.runs[0].finite_size_floor == doctest::Approx(0.1 * flat_spectrum_floor(20.0)));
  CHECK(r.energy_residual <= 1e-12);
  REQUIRE(r.short_time.size() == 2);
  for (const auto& s : r.short_time) CHECK(s.pass);
  CHECK(r.ordered);
  CHECK(r.top_rate_matches);
  CHECK(r.differences_match);
  CHECK(r.pass);
}

TEST_CASE("comparison validation") {
  CompareConfig c;
  c.gaps = {4.0};
  CHECK_THROWS_AS(compare_geometries(c), hypflow::ParameterError);
  c.gaps = {4.0, 4.0};
  CHECK_THROWS_AS(compare_geometries(c), hypflow::ParameterError);
  c.gaps = {0.0, 3.0};
  CHECK_THROWS_AS(compare_geometries(c), hypflow::ParameterError);
}
