#pragma once

// Scalar majorant of the Picard iteration u_{n+1} = e^{-t mu A} u0 + B(u_n, u_n)
// in the weighted space X:
//   a_0 = c1 |u0|,  a_{n+1} = c1 |u0| + c2 a_n^2.
// It converges iff 4 c1 c2 |u0| < 1, to the smaller root of c2 a^2 - a + c1 |u0| = 0.

#include <cstddef>
#include <vector>

namespace hypflow::contraction {

/// (4 c1 c2)^{-1}. Depends only on the product c1 * c2; there is no geometry input.
double epsilon0(double c1, double c2);

enum class Verdict { converged, diverged };

struct MajorantTrace {
  double c1 = 1.0;
  double c2 = 1.0;
  double u0_norm = 0.0;
  double epsilon0 = 0.25;
  std::vector<double> iterates;
  Verdict verdict = Verdict::converged;
  /// Last iterate when converged.
  double limit = 0.0;
  /// Step at which divergence was declared (iterate exceeded 20 c1 |u0| or the
  /// step budget ran out).
  std::size_t diverged_at = 0;
};

/// Stops when |a_{n+1} - a_n| <= 1e-12 (converged), a_n > 10 * (2 c1 |u0|) or
/// max_steps is reached (diverged).
MajorantTrace majorant_iterate(double c1, double c2, double u0_norm, std::size_t max_steps = 1'000'000);

/// Smaller root (1 - sqrt(1 - 4 c1 c2 |u0|)) / (2 c2), evaluated without
/// cancellation. NaN above the threshold.
double majorant_fixed_point(double c1, double c2, double u0_norm);

}  // namespace hypflow::contraction
