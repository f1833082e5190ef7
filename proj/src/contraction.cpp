#include "hypflow/contraction.hpp"

#include <cmath>
#include <limits>

#include "hypflow/error.hpp"

namespace hypflow::contraction {

double epsilon0(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw ParameterError("contraction constants must be positive");
  return 1.0 / (4.0 * c1 * c2);
}

double majorant_fixed_point(double c1, double c2, double u0_norm) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw ParameterError("contraction constants must be positive");
  if (!(u0_norm >= 0.0)) throw ParameterError("initial data norm must be nonnegative");
  const double disc = 1.0 - 4.0 * c1 * c2 * u0_norm;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  // (1 - sqrt(disc)) / (2 c2) = 2 c1 u0 / (1 + sqrt(disc))
  return 2.0 * c1 * u0_norm / (1.0 + std::sqrt(disc));
}

MajorantTrace majorant_iterate(double c1, double c2, double u0_norm, std::size_t max_steps) {
  MajorantTrace trace;
  trace.epsilon0 = epsilon0(c1, c2);
  if (!(u0_norm >= 0.0) || !std::isfinite(u0_norm)) throw ParameterError("initial data norm must be nonnegative");
  if (max_steps == 0) throw ParameterError("majorant iteration needs max_steps > 0");
  trace.c1 = c1;
  trace.c2 = c2;
  trace.u0_norm = u0_norm;

  const double linear = c1 * u0_norm;
  const double blowup = 10.0 * (2.0 * linear);
  double a = linear;
  trace.iterates.push_back(a);
  for (std::size_t n = 1; n <= max_steps; ++n) {
    const double next = linear + c2 * a * a;
    trace.iterates.push_back(next);
    if (std::abs(next - a) <= 1e-12) {
      trace.verdict = Verdict::converged;
      trace.limit = next;
      return trace;
    }
    if (next > blowup) {
      trace.verdict = Verdict::diverged;
      trace.diverged_at = n;
      return trace;
    }
    a = next;
  }
  trace.verdict = Verdict::diverged;
  trace.diverged_at = max_steps;
  return trace;
}

}  // namespace hypflow::contraction
