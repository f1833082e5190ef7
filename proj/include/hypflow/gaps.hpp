#pragma once

// Closed-form spectral gaps of the scalar, Bochner, Hodge and deformation
// Laplacians on hyperbolic 3-space. Every quantity is an exact rational.

#include <optional>
#include <string>
#include <vector>

#include "hypflow/rational.hpp"

namespace hypflow::gaps {

/// Bottom of the Lp spectrum of the scalar Laplacian: 4(p-1)/p^2, zero at p = inf.
Rational scalar_gap(const Exponent& p);

struct GapReport {
  Exponent p = 2;
  Rational scalar_bottom;
  /// scalar_bottom + 2: Ricci shift of the deformation Laplacian.
  Rational deformation_lower;
  /// Exact divergence-free L2 gap; only known at p = 2.
  std::optional<Rational> exact_l2;
  std::string scalar_source;
  std::string deformation_source;
  std::string exact_source;

  friend bool operator==(const GapReport&, const GapReport&) = default;
};

GapReport deformation_gap(const Exponent& p);

/// 2 + scalar_gap(r')/2 + scalar_gap(r)/2 with r' = r/(r-1); requires 1 < r < inf.
Rational bilinear_gamma(const Exponent& r);

enum class Laplacian { hodge, bochner, deformation };

std::string to_string(Laplacian l);

struct LaplacianGap {
  Laplacian laplacian;
  Rational gap;
  friend bool operator==(const LaplacianGap&, const LaplacianGap&) = default;
};

/// L2 gaps on divergence-free fields, in the order Hodge, Bochner, Deformation.
std::vector<LaplacianGap> laplacian_comparison();

/// Aligned plain-text table for a report.
std::string format_table(const GapReport& report);
std::string format_table(const std::vector<LaplacianGap>& rows);

}  // namespace hypflow::gaps
