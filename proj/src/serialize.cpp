#include "hypflow/serialize.hpp"

#include <cmath>
#include <limits>

#include "hypflow/error.hpp"

using nlohmann::json;

namespace hypflow {

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double number_or_inf(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

void to_json(json& j, const Rational& r) { j = r.str(); }
void from_json(const json& j, Rational& r) { r = Rational::parse(j.get<std::string>()); }

namespace gaps {

void to_json(json& j, const GapReport& r) {
  j = json{{"p", r.p},
           {"scalar_bottom", r.scalar_bottom},
           {"deformation_lower", r.deformation_lower},
           {"exact_l2", r.exact_l2 ? json(*r.exact_l2) : json(nullptr)},
           {"scalar_source", r.scalar_source},
           {"deformation_source", r.deformation_source},
           {"exact_source", r.exact_source}};
}

void from_json(const json& j, GapReport& r) {
  j.at("p").get_to(r.p);
  j.at("scalar_bottom").get_to(r.scalar_bottom);
  j.at("deformation_lower").get_to(r.deformation_lower);
  if (j.at("exact_l2").is_null())
    r.exact_l2.reset();
  else
    r.exact_l2 = j.at("exact_l2").get<Rational>();
  j.at("scalar_source").get_to(r.scalar_source);
  j.at("deformation_source").get_to(r.deformation_source);
  j.at("exact_source").get_to(r.exact_source);
}

void to_json(json& j, const LaplacianGap& g) { j = json{{"laplacian", to_string(g.laplacian)}, {"gap", g.gap}}; }

void from_json(const json& j, LaplacianGap& g) {
  const auto name = j.at("laplacian").get<std::string>();
  if (name == to_string(Laplacian::hodge))
    g.laplacian = Laplacian::hodge;
  else if (name == to_string(Laplacian::bochner))
    g.laplacian = Laplacian::bochner;
  else if (name == to_string(Laplacian::deformation))
    g.laplacian = Laplacian::deformation;
  else
    throw ParameterError("unknown Laplacian '" + name + "'");
  j.at("gap").get_to(g.gap);
}

}  // namespace gaps

namespace kato {

void to_json(json& j, const KatoExponents& e) {
  j = json{{"p", e.p},
           {"q", e.q},
           {"beta", e.beta},
           {"delta", e.delta},
           {"scaling_exponent", e.scaling_exponent},
           {"class", to_string(e.integral_class)},
           {"admissible", e.admissible},
           {"pointwise_divergent", e.pointwise_divergent}};
}

void from_json(const json& j, KatoExponents& e) {
  j.at("p").get_to(e.p);
  j.at("q").get_to(e.q);
  j.at("beta").get_to(e.beta);
  j.at("delta").get_to(e.delta);
  j.at("scaling_exponent").get_to(e.scaling_exponent);
  e.integral_class = parse_class(j.at("class").get<std::string>());
  j.at("admissible").get_to(e.admissible);
  j.at("pointwise_divergent").get_to(e.pointwise_divergent);
}

void to_json(json& j, const RefinementStep& s) {
  j = json{{"level", s.level}, {"size", s.size}, {"value", number(s.value)}};
}

void from_json(const json& j, RefinementStep& s) {
  j.at("level").get_to(s.level);
  j.at("size").get_to(s.size);
  s.value = number_or_inf(j.at("value"));
}

void to_json(json& j, const IntegralResult& r) {
  j = json{{"t", r.t},
           {"exponents", r.exponents},
           {"mu", r.mu},
           {"gamma", r.gamma},
           {"alpha", r.alpha},
           {"divergent", r.divergent},
           {"value", number(r.value)},
           {"bound", r.bound ? number(*r.bound) : json(nullptr)},
           {"trace", r.trace}};
}

void from_json(const json& j, IntegralResult& r) {
  j.at("t").get_to(r.t);
  j.at("exponents").get_to(r.exponents);
  j.at("mu").get_to(r.mu);
  j.at("gamma").get_to(r.gamma);
  j.at("alpha").get_to(r.alpha);
  j.at("divergent").get_to(r.divergent);
  r.value = number_or_inf(j.at("value"));
  if (j.at("bound").is_null())
    r.bound.reset();
  else
    r.bound = j.at("bound").get<double>();
  j.at("trace").get_to(r.trace);
}

void to_json(json& j, const SlopeEntry& e) {
  j = json{{"q", e.q}, {"gamma", e.gamma}, {"slope", e.slope}, {"prefactor", e.prefactor}};
}

void from_json(const json& j, SlopeEntry& e) {
  j.at("q").get_to(e.q);
  j.at("gamma").get_to(e.gamma);
  j.at("slope").get_to(e.slope);
  j.at("prefactor").get_to(e.prefactor);
}

void to_json(json& j, const QIndependenceReport& r) {
  j = json{{"p", r.p},
           {"expected_slope", r.expected_slope},
           {"entries", r.entries},
           {"max_spread", r.max_spread},
           {"max_gamma_spread", r.max_gamma_spread},
           {"pass", r.pass}};
}

void from_json(const json& j, QIndependenceReport& r) {
  j.at("p").get_to(r.p);
  j.at("expected_slope").get_to(r.expected_slope);
  j.at("entries").get_to(r.entries);
  j.at("max_spread").get_to(r.max_spread);
  j.at("max_gamma_spread").get_to(r.max_gamma_spread);
  j.at("pass").get_to(r.pass);
}

}  // namespace kato

namespace semigroup {

void to_json(json& j, const DecayFit& f) {
  j = json{{"rate", f.rate},   {"power", f.power}, {"log_prefactor", f.log_prefactor},
           {"t_min", f.t_min}, {"t_max", f.t_max}, {"residual", f.residual}};
}

void from_json(const json& j, DecayFit& f) {
  j.at("rate").get_to(f.rate);
  j.at("power").get_to(f.power);
  j.at("log_prefactor").get_to(f.log_prefactor);
  j.at("t_min").get_to(f.t_min);
  j.at("t_max").get_to(f.t_max);
  j.at("residual").get_to(f.residual);
}

void to_json(json& j, const LpLqMember& m) {
  j = json{{"sigma", m.sigma},
           {"long_time", m.long_time},
           {"short_time", m.short_time},
           {"short_time_exponent", m.short_time_exponent}};
}

void from_json(const json& j, LpLqMember& m) {
  j.at("sigma").get_to(m.sigma);
  j.at("long_time").get_to(m.long_time);
  j.at("short_time").get_to(m.short_time);
  j.at("short_time_exponent").get_to(m.short_time_exponent);
}

void to_json(json& j, const LpLqReport& r) {
  j = json{{"kind", to_string(r.kind)},
           {"mu", r.mu},
           {"p", r.p},
           {"q", r.q},
           {"fitted_rate", r.fitted_rate},
           {"fitted_power", r.fitted_power},
           {"expected_gap", r.expected_gap},
           {"expected_power", r.expected_power},
           {"rate_pass", r.rate_pass},
           {"power_pass", r.power_pass},
           {"pass", r.pass},
           {"members", r.members}};
}

void from_json(const json& j, LpLqReport& r) {
  r.kind = parse_kind(j.at("kind").get<std::string>());
  j.at("mu").get_to(r.mu);
  j.at("p").get_to(r.p);
  j.at("q").get_to(r.q);
  j.at("fitted_rate").get_to(r.fitted_rate);
  j.at("fitted_power").get_to(r.fitted_power);
  j.at("expected_gap").get_to(r.expected_gap);
  j.at("expected_power").get_to(r.expected_power);
  j.at("rate_pass").get_to(r.rate_pass);
  j.at("power_pass").get_to(r.power_pass);
  j.at("pass").get_to(r.pass);
  j.at("members").get_to(r.members);
}

}  // namespace semigroup

namespace contraction {

void to_json(json& j, const MajorantTrace& t) {
  j = json{{"c1", t.c1},
           {"c2", t.c2},
           {"u0_norm", t.u0_norm},
           {"epsilon0", t.epsilon0},
           {"verdict", t.verdict == Verdict::converged ? "converged" : "diverged"},
           {"limit", t.limit},
           {"diverged_at", t.diverged_at},
           {"iterates", t.iterates}};
}

void from_json(const json& j, MajorantTrace& t) {
  j.at("c1").get_to(t.c1);
  j.at("c2").get_to(t.c2);
  j.at("u0_norm").get_to(t.u0_norm);
  j.at("epsilon0").get_to(t.epsilon0);
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict == "converged")
    t.verdict = Verdict::converged;
  else if (verdict == "diverged")
    t.verdict = Verdict::diverged;
  else
    throw ParameterError("unknown verdict '" + verdict + "'");
  j.at("limit").get_to(t.limit);
  j.at("diverged_at").get_to(t.diverged_at);
  j.at("iterates").get_to(t.iterates);
}

}  // namespace contraction

namespace galerkin {

void to_json(json& j, const Checkpoint& c) { j = json{{"t", c.t}, {"state", c.state}}; }

void from_json(const json& j, Checkpoint& c) {
  j.at("t").get_to(c.t);
  j.at("state").get_to(c.state);
}

void to_json(json& j, const Trajectory& t) {
  j = json{{"times", t.times},
           {"l2_norms", t.l2_norms},
           {"checkpoints", t.checkpoints},
           {"step_size", t.step_size},
           {"order", t.order}};
}

void from_json(const json& j, Trajectory& t) {
  j.at("times").get_to(t.times);
  j.at("l2_norms").get_to(t.l2_norms);
  j.at("checkpoints").get_to(t.checkpoints);
  j.at("step_size").get_to(t.step_size);
  j.at("order").get_to(t.order);
}

void to_json(json& j, const CompareConfig& c) {
  j = json{{"gaps", c.gaps},
           {"n_modes", c.n_modes},
           {"mu", c.mu},
           {"coupling_density", c.coupling_density},
           {"seed", c.seed},
           {"xi_max", c.xi_max},
           {"box_length", c.box_length},
           {"u0_norm", c.u0_norm},
           {"t_end", c.t_end},
           {"dt", c.dt},
           {"tail_start", c.tail_start},
           {"rate_tolerance", c.rate_tolerance},
           {"difference_tolerance", c.difference_tolerance},
           {"short_time", c.short_time}};
}

void from_json(const json& j, CompareConfig& c) {
  j.at("gaps").get_to(c.gaps);
  j.at("n_modes").get_to(c.n_modes);
  j.at("mu").get_to(c.mu);
  j.at("coupling_density").get_to(c.coupling_density);
  j.at("seed").get_to(c.seed);
  j.at("xi_max").get_to(c.xi_max);
  j.at("box_length").get_to(c.box_length);
  j.at("u0_norm").get_to(c.u0_norm);
  j.at("t_end").get_to(c.t_end);
  j.at("dt").get_to(c.dt);
  j.at("tail_start").get_to(c.tail_start);
  j.at("rate_tolerance").get_to(c.rate_tolerance);
  j.at("difference_tolerance").get_to(c.difference_tolerance);
  j.at("short_time").get_to(c.short_time);
}

void to_json(json& j, const GapRun& r) {
  j = json{{"gap", r.gap},
           {"xi_min", r.xi_min},
           {"predicted_rate", r.predicted_rate},
           {"fitted_rate", r.fitted_rate},
           {"fit_residual", r.fit_residual},
           {"finite_size_floor", r.finite_size_floor},
           {"final_norm", r.final_norm}};
}

void from_json(const json& j, GapRun& r) {
  j.at("gap").get_to(r.gap);
  j.at("xi_min").get_to(r.xi_min);
  j.at("predicted_rate").get_to(r.predicted_rate);
  j.at("fitted_rate").get_to(r.fitted_rate);
  j.at("fit_residual").get_to(r.fit_residual);
  j.at("finite_size_floor").get_to(r.finite_size_floor);
  j.at("final_norm").get_to(r.final_norm);
}

void to_json(json& j, const ShortTimeCheck& c) {
  j = json{{"gap_a", c.gap_a}, {"gap_b", c.gap_b}, {"max_ratio", c.max_ratio}, {"bound", c.bound}, {"pass", c.pass}};
}

void from_json(const json& j, ShortTimeCheck& c) {
  j.at("gap_a").get_to(c.gap_a);
  j.at("gap_b").get_to(c.gap_b);
  j.at("max_ratio").get_to(c.max_ratio);
  j.at("bound").get_to(c.bound);
  j.at("pass").get_to(c.pass);
}

void to_json(json& j, const CompareReport& r) {
  j = json{{"config", r.config},
           {"runs", r.runs},
           {"energy_residual", r.energy_residual},
           {"ordered", r.ordered},
           {"top_rate_matches", r.top_rate_matches},
           {"differences_match", r.differences_match},
           {"short_time", r.short_time},
           {"pass", r.pass}};
}

void from_json(const json& j, CompareReport& r) {
  j.at("config").get_to(r.config);
  j.at("runs").get_to(r.runs);
  j.at("energy_residual").get_to(r.energy_residual);
  j.at("ordered").get_to(r.ordered);
  j.at("top_rate_matches").get_to(r.top_rate_matches);
  j.at("differences_match").get_to(r.differences_match);
  j.at("short_time").get_to(r.short_time);
  j.at("pass").get_to(r.pass);
}

}  // namespace galerkin

}  // namespace hypflow

hypflow::Exponent nlohmann::adl_serializer<hypflow::Exponent>::from_json(const json& j) {
  return hypflow::Exponent::parse(j.get<std::string>());
}

void nlohmann::adl_serializer<hypflow::Exponent>::to_json(json& j, const hypflow::Exponent& p) { j = p.str(); }
