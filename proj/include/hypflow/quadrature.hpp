#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hypflow::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on the Legendre recurrence; nodes ascending, accurate to
/// a few ulp for n up to several hundred.
GaussLegendreRule gauss_legendre(std::size_t n);

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// Bisects the interval with the largest error estimate until the total
/// estimate is below max(abs_tol, rel_tol * |value|) or max_intervals is
/// reached (converged = false in that case; the best value is still returned).
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-12,
                                  std::size_t max_intervals = 4000);

}  // namespace hypflow::quad
