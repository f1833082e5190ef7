#include <doctest.h>

#include <cmath>

#include "hypflow/contraction.hpp"
#include "hypflow/error.hpp"
#include "oracles.hpp"

using namespace hypflow::contraction;

namespace {

// Smaller root of a^2 - a + 0.2 by the quadratic formula.
const double kRootAt02 = (1.0 - std::sqrt(0.2)) / 2.0;

}  // namespace

TEST_CASE("threshold") {
  CHECK(epsilon0(1.0, 1.0) == 0.25);
  CHECK(epsilon0(2.0, 0.5) == 0.25);
  CHECK(epsilon0(4.0, 2.0) == doctest::Approx(1.0 / 32.0));
  oracle::Gen gen(61);
  for (int i = 0; i < 100; ++i) {
    const double c1 = gen.uniform(0.1, 10.0);
    const double c2 = gen.uniform(0.1, 10.0);
    const double lambda = gen.uniform(0.1, 10.0);
    CHECK(epsilon0(c1, c2) == doctest::Approx(epsilon0(lambda * c1, c2 / lambda)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(epsilon0(0.0, 1.0), hypflow::ParameterError);
  CHECK_THROWS_AS(epsilon0(1.0, -1.0), hypflow::ParameterError);
}

TEST_CASE("convergent and divergent examples") {
  const MajorantTrace a = majorant_iterate(1.0, 1.0, 0.2);
  CHECK(a.verdict == Verdict::converged);
  CHECK(kRootAt02 == doctest::Approx(0.27639).epsilon(1e-5));
  CHECK(std::abs(a.limit - kRootAt02) <= 1e-9);
  CHECK(a.limit <= 0.4);
  CHECK(majorant_fixed_point(1.0, 1.0, 0.2) == doctest::Approx(kRootAt02).epsilon(1e-15));

  const MajorantTrace b = majorant_iterate(1.0, 1.0, 0.3);
  CHECK(b.verdict == Verdict::diverged);
  CHECK(b.diverged_at > 0);
  CHECK(std::isnan(majorant_fixed_point(1.0, 1.0, 0.3)));

  const MajorantTrace z = majorant_iterate(1.0, 1.0, 0.0);
  CHECK(z.verdict == Verdict::converged);
  CHECK(z.limit == 0.0);
  CHECK(z.iterates.size() <= 2);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(majorant_iterate(0.0, 1.0, 0.1), hypflow::ParameterError);
  CHECK_THROWS_AS(majorant_iterate(1.0, 0.0, 0.1), hypflow::ParameterError);
  CHECK_THROWS_AS(majorant_iterate(1.0, 1.0, -0.1), hypflow::ParameterError);
}

TEST_CASE("property: dichotomy across the threshold at 1e-6 resolution") {
  for (const auto& [c1, c2] : {std::pair{1.0, 1.0}, {2.0, 0.25}, {0.5, 3.0}}) {
    const double eps = epsilon0(c1, c2);
    for (int k = -50; k <= 50; ++k) {
      if (k == 0) continue;
      const double u0 = eps + 1e-6 * k;
      const MajorantTrace tr = majorant_iterate(c1, c2, u0);
      CHECK((tr.verdict == Verdict::converged) == (u0 < eps));
    }
  }
}

TEST_CASE("property: monotone iterates, root and ball bounds") {
  oracle::Gen gen(62);
  for (int i = 0; i < 300; ++i) {
    const double c1 = gen.uniform(0.1, 5.0);
    const double c2 = gen.uniform(0.1, 5.0);
    const double eps = epsilon0(c1, c2);
    const double u0 = gen.uniform(0.0, 2.0 * eps);
    const MajorantTrace tr = majorant_iterate(c1, c2, u0);
    for (std::size_t k = 1; k < tr.iterates.size(); ++k) CHECK(tr.iterates[k] >= tr.iterates[k - 1]);
    CHECK(tr.epsilon0 == eps);
    if (tr.verdict == Verdict::converged) {
      CHECK(tr.limit <= 2.0 * c1 * u0);
      const double root = majorant_fixed_point(c1, c2, u0);
      // The stopping rule |a_{n+1} - a_n| <= 1e-12 leaves an error of at most
      // 1e-12 * rho / (1 - rho), rho = 2 c2 a* the local contraction factor.
      const double rho = 2.0 * c2 * root;
      CHECK(std::abs(tr.limit - root) <= 1e-12 * rho / (1.0 - rho) + 1e-14 * root);
    }
  }
}
