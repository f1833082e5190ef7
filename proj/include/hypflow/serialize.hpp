#pragma once

// JSON conversions for every report type. Rationals and exponents travel as
// strings ("26/9", "inf"); infinite doubles travel as null.

#include <json.hpp>

#include "hypflow/contraction.hpp"
#include "hypflow/galerkin.hpp"
#include "hypflow/gaps.hpp"
#include "hypflow/kato.hpp"
#include "hypflow/rational.hpp"
#include "hypflow/semigroup.hpp"

namespace hypflow {

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);

namespace gaps {
void to_json(nlohmann::json& j, const GapReport& r);
void from_json(const nlohmann::json& j, GapReport& r);
void to_json(nlohmann::json& j, const LaplacianGap& g);
void from_json(const nlohmann::json& j, LaplacianGap& g);
}  // namespace gaps

namespace kato {
void to_json(nlohmann::json& j, const KatoExponents& e);
void from_json(const nlohmann::json& j, KatoExponents& e);
void to_json(nlohmann::json& j, const RefinementStep& s);
void from_json(const nlohmann::json& j, RefinementStep& s);
void to_json(nlohmann::json& j, const IntegralResult& r);
void from_json(const nlohmann::json& j, IntegralResult& r);
void to_json(nlohmann::json& j, const SlopeEntry& e);
void from_json(const nlohmann::json& j, SlopeEntry& e);
void to_json(nlohmann::json& j, const QIndependenceReport& r);
void from_json(const nlohmann::json& j, QIndependenceReport& r);
}  // namespace kato

namespace semigroup {
void to_json(nlohmann::json& j, const DecayFit& f);
void from_json(const nlohmann::json& j, DecayFit& f);
void to_json(nlohmann::json& j, const LpLqMember& m);
void from_json(const nlohmann::json& j, LpLqMember& m);
void to_json(nlohmann::json& j, const LpLqReport& r);
void from_json(const nlohmann::json& j, LpLqReport& r);
}  // namespace semigroup

namespace contraction {
void to_json(nlohmann::json& j, const MajorantTrace& t);
void from_json(const nlohmann::json& j, MajorantTrace& t);
}  // namespace contraction

namespace galerkin {
void to_json(nlohmann::json& j, const Checkpoint& c);
void from_json(const nlohmann::json& j, Checkpoint& c);
void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);
void to_json(nlohmann::json& j, const CompareConfig& c);
void from_json(const nlohmann::json& j, CompareConfig& c);
void to_json(nlohmann::json& j, const GapRun& r);
void from_json(const nlohmann::json& j, GapRun& r);
void to_json(nlohmann::json& j, const ShortTimeCheck& c);
void from_json(const nlohmann::json& j, ShortTimeCheck& c);
void to_json(nlohmann::json& j, const CompareReport& r);
void from_json(const nlohmann::json& j, CompareReport& r);
}  // namespace galerkin

}  // namespace hypflow

template <>
struct nlohmann::adl_serializer<hypflow::Exponent> {
  static hypflow::Exponent from_json(const nlohmann::json& j);
  static void from_json(const nlohmann::json& j, hypflow::Exponent& p) { p = from_json(j); }
  static void to_json(nlohmann::json& j, const hypflow::Exponent& p);
};
