#include "hypflow/gaps.hpp"

#include <fmt/format.h>

#include "hypflow/error.hpp"

namespace hypflow::gaps {
namespace {

// Weitzenboeck on H^3: -Delta_B = Delta_H + 2 and Delta_Def = Delta_B - 2, so the
// Stokes operator is Delta_H + 4. Donnelly's bound for exact 2-forms on H^3,
// (n - 2k + 1)^2 / 4 with n = 3, k = 2, is 0.
const Rational kRicciShift(2);
const Rational kHodgeBottom(0);
const Rational kBochnerShift(2);
const Rational kStokesShift(4);

void require_at_least_one(const Exponent& p) {
  if (p < Exponent(1)) throw ParameterError("exponent must satisfy p >= 1, got " + p.str());
}

}  // namespace

Rational scalar_gap(const Exponent& p) {
  require_at_least_one(p);
  if (p.is_infinite()) return Rational(0);
  const Rational v = p.value();
  return Rational(4) * (v - Rational(1)) / (v * v);
}

GapReport deformation_gap(const Exponent& p) {
  GapReport report;
  report.p = p;
  report.scalar_bottom = scalar_gap(p);
  report.deformation_lower = report.scalar_bottom + kRicciShift;
  report.scalar_source = "Lp bottom of the scalar spectrum, 4(p-1)/p^2";
  report.deformation_source = "scalar bottom + 2 (Ricci shift, diamagnetic domination)";
  if (p == Exponent(2)) {
    report.exact_l2 = kHodgeBottom + kStokesShift;
    report.exact_source = "Donnelly + Weitzenboeck";
  }
  return report;
}

Rational bilinear_gamma(const Exponent& r) {
  if (r.is_infinite() || !(r > Exponent(1)))
    throw ParameterError("bilinear gamma needs 1 < r < inf, got " + r.str());
  const Exponent dual = r.conjugate();
  return kRicciShift + scalar_gap(dual) / Rational(2) + scalar_gap(r) / Rational(2);
}

std::string to_string(Laplacian l) {
  switch (l) {
    case Laplacian::hodge: return "Hodge";
    case Laplacian::bochner: return "Bochner";
    case Laplacian::deformation: return "Deformation";
  }
  return "unknown";
}

std::vector<LaplacianGap> laplacian_comparison() {
  return {{Laplacian::hodge, kHodgeBottom},
          {Laplacian::bochner, kHodgeBottom + kBochnerShift},
          {Laplacian::deformation, kHodgeBottom + kStokesShift}};
}

std::string format_table(const GapReport& report) {
  std::string out = fmt::format("{:<20} {:>10} {:>20}  {}\n", "quantity", "exact", "decimal", "source");
  auto row = [&out](const std::string& name, const Rational& v, const std::string& src) {
    out += fmt::format("{:<20} {:>10} {:>20.17g}  {}\n", name, v.str(), v.to_double(), src);
  };
  out += fmt::format("{:<20} {:>10}\n", "p", report.p.str());
  row("scalar_bottom", report.scalar_bottom, report.scalar_source);
  row("deformation_lower", report.deformation_lower, report.deformation_source);
  if (report.exact_l2) {
    row("exact_l2", *report.exact_l2, report.exact_source);
  } else {
    out += fmt::format("{:<20} {:>10} {:>20}  {}\n", "exact_l2", "-", "-", "not known for p != 2");
  }
  return out;
}

std::string format_table(const std::vector<LaplacianGap>& rows) {
  std::string out = fmt::format("{:<12} {:>6}\n", "laplacian", "gap");
  for (const auto& r : rows) out += fmt::format("{:<12} {:>6}\n", to_string(r.laplacian), r.gap.str());
  return out;
}

}  // namespace hypflow::gaps
