#include "orbitlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbitlab/error.hpp"

namespace orbitlab {

namespace {

int as_int(const ordered_json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_double(const ordered_json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

PolyMap map_from_json(const ordered_json& j) {
  if (!j.is_object()) throw InvalidInput("map JSON must be an object");
  for (const char* key : {"n", "degree", "field", "coeffs"})
    if (!j.contains(key)) throw InvalidInput(std::string("map JSON lacks \"") + key + "\"");
  const int n = as_int(j.at("n"), "n");
  const int degree = as_int(j.at("degree"), "degree");
  if (!j.at("field").is_string()) throw InvalidInput("field must be a string");
  const Field field = field_from_string(j.at("field").get<std::string>());
  if (!j.at("coeffs").is_array()) throw InvalidInput("coeffs must be an array");
  if (n < 1) throw InvalidInput("n must be >= 1");

  PolyMap::CoefficientTable table;
  for (const auto& entry : j.at("coeffs")) {
    if (!entry.is_object() || !entry.contains("alpha") || !entry.contains("value"))
      throw InvalidInput("each coefficient needs \"alpha\" and \"value\"");
    const auto& ja = entry.at("alpha");
    const auto& jv = entry.at("value");
    if (!ja.is_array() || ja.size() != static_cast<std::size_t>(n)) throw InvalidInput("alpha must have N entries");
    if (!jv.is_array() || jv.size() != static_cast<std::size_t>(n)) throw InvalidInput("value must have N entries");
    std::vector<int> alpha;
    for (const auto& e : ja) alpha.push_back(as_int(e, "alpha entry"));
    std::vector<Scalar> value;
    for (const auto& v : jv) {
      if (!v.is_array() || v.size() != 2) throw InvalidInput("each value entry must be [re, im]");
      value.emplace_back(as_double(v[0], "re"), as_double(v[1], "im"));
    }
    MultiIndex idx(alpha);
    if (table.count(idx)) throw InvalidInput("duplicate alpha in coeffs");
    table.emplace(std::move(idx), std::move(value));
  }
  return PolyMap(n, degree, field, std::move(table));
}

ordered_json map_to_json(const PolyMap& map) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& [alpha, value] : map.coefficients()) {
    ordered_json v = ordered_json::array();
    for (const Scalar& z : value) v.push_back(to_json(z));
    coeffs.push_back({{"alpha", alpha.exponents()}, {"value", v}});
  }
  return {{"n", map.dimension()}, {"degree", map.degree()}, {"field", to_string(map.field())}, {"coeffs", coeffs}};
}

PolyMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open map file " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw InvalidInput("map file " + path + " is not valid JSON: " + e.what());
  }
  return map_from_json(j);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string map_hash(const PolyMap& map) { return hex64(fnv1a64(map_to_json(map).dump())); }

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json to_json(Scalar z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json to_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(to_json(p(i)));
  return a;
}

ordered_json to_json(const SolveConfig& c) {
  return {{"tolerances",
           {{"residual", c.tol.residual}, {"polish", c.tol.polish}, {"dedup", c.tol.dedup}, {"singular", c.tol.singular}}},
          {"degree_cap", c.degree_cap},
          {"companion_cap", c.companion_cap},
          {"seeds", {{"lower", c.seeds.lower}, {"upper", c.seeds.upper}, {"grid", c.seeds.grid}, {"random", c.seeds.random}}},
          {"rng_seed", c.rng_seed},
          {"max_newton_iterations", c.max_newton_iterations}};
}

ordered_json to_json(const OrbitRecord& r) {
  ordered_json pts = ordered_json::array();
  for (const Point& p : r.points) pts.push_back(to_json(p));
  ordered_json mult = ordered_json::array();
  for (const Scalar& z : r.multipliers) mult.push_back(to_json(z));
  return {{"least_period", r.least_period},
          {"points", pts},
          {"multipliers", mult},
          {"classification", to_string(r.classification)},
          {"margin", r.margin},
          {"char_residual", r.char_residual},
          {"isolated", r.isolated}};
}

ordered_json to_json(const SolveReport& r, const PolyMap& map, const std::vector<OrbitRecord>& orbits) {
  ordered_json pts = ordered_json::array();
  for (const PeriodicPoint& p : r.points) {
    pts.push_back({{"location", to_json(p.location)},
                   {"residual", p.residual},
                   {"newton_converged", p.newton_converged},
                   {"isolated", p.isolated_certificate},
                   {"min_singular_value", p.min_singular_value},
                   {"multiplicity", p.multiplicity}});
  }
  ordered_json orb = ordered_json::array();
  for (const OrbitRecord& o : orbits) orb.push_back(to_json(o));
  const SolveDiagnostics& d = r.diagnostics;
  auto opt = [](const auto& o) { return o ? ordered_json(*o) : ordered_json(nullptr); };
  return {{"map_hash", map_hash(map)},
          {"k", r.period},
          {"field", to_string(r.field)},
          {"bezout_bound", r.bezout_bound},
          {"completeness", to_string(r.completeness)},
          {"count", r.points.size()},
          {"isolated_count", r.isolated_count()},
          {"complex_count", opt(r.complex_count)},
          {"complex_isolated", opt(r.complex_isolated)},
          {"deficit", opt(r.deficit)},
          {"diagnostics",
           {{"root_method", d.root_method},
            {"iterate_degree", d.iterate_degree},
            {"degree_deficient", d.degree_deficient},
            {"identically_periodic", d.identically_periodic},
            {"rejected", d.rejected},
            {"seeds", d.seeds},
            {"diverged", d.diverged},
            {"not_converged", d.not_converged},
            {"refined", d.refined}}},
          {"points", pts},
          {"orbits", orb}};
}

ordered_json to_json(const CensusTable& t) {
  ordered_json rows = ordered_json::array();
  for (const CensusRow& r : t.rows) {
    ordered_json row = {{"n", r.n}, {"available", r.available}};
    if (!r.available) {
      row["error"] = r.error;
    } else {
      row["P"] = r.P;
      row["Q"] = r.Q;
      row["P_complex"] = r.P_complex ? ordered_json(*r.P_complex) : ordered_json(nullptr);
      row["nonisolated"] = r.nonisolated;
      row["marginal_orbits"] = r.marginal_orbits;
      row["flagged"] = r.flagged;
      row["flags"] = r.flags;
      row["completeness"] = to_string(r.completeness);
      row["method"] = r.method;
      row["bezout_bound"] = r.bezout_bound;
      row["min_margin"] = finite_or_null(r.min_margin);
    }
    rows.push_back(std::move(row));
  }
  return {{"n_max", t.n_max}, {"field", to_string(t.field)}, {"dimension", t.dimension}, {"degree", t.degree}, {"rows", rows}};
}

ordered_json to_json(const ZetaTruncation& z) {
  return {{"order", z.order},
          {"coefficients", z.coefficients},
          {"radius_estimate", finite_or_null(z.radius_estimate)},
          {"am_constant", z.am_constant},
          {"am_argmax", z.am_argmax ? ordered_json(*z.am_argmax) : ordered_json(nullptr)}};
}

ordered_json to_json(const GrowthStats& g) {
  ordered_json seq = ordered_json::array();
  for (const auto& v : g.bowen_sequence) seq.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
  return {{"bowen_sequence", seq},
          {"bowen_limsup_proxy", g.bowen_limsup_proxy ? ordered_json(*g.bowen_limsup_proxy) : ordered_json(nullptr)},
          {"window", g.window}};
}

ordered_json to_json(const SampleConfig& c) {
  ordered_json lambdas = ordered_json::array();
  for (const Scalar& l : c.lambda0s) lambdas.push_back(to_json(l));
  return {{"dimension", c.dimension},
          {"degree", c.degree},
          {"k_max", c.k_max},
          {"trials", c.trials},
          {"rng_seed", c.rng_seed},
          {"coefficient_law", "uniform[-1,1]"},
          {"eps_ladder", c.eps_ladder},
          {"lambda0", lambdas},
          {"lambda0_tol", c.lambda0_tol},
          {"orbit_field", to_string(c.orbit_field)},
          {"planted_controls", c.planted_controls},
          {"eta", c.classify.eta},
          {"solve", to_json(c.solve)}};
}

ordered_json to_json(const GenericityReport& r) {
  ordered_json freq = ordered_json::array();
  for (std::size_t i = 0; i < r.frequencies.size(); ++i)
    freq.push_back({{"epsilon", r.config.eps_ladder[i]}, {"count", r.eps_counts[i]}, {"frequency", r.frequencies[i]}});
  ordered_json hits = ordered_json::array();
  for (const Lambda0Hits& h : r.hits)
    hits.push_back({{"lambda0", to_json(h.lambda0)}, {"orbit_hits", h.orbit_hits}, {"trial_hits", h.trial_hits}});
  ordered_json controls = ordered_json::array();
  for (const ControlResult& c : r.controls)
    controls.push_back({{"name", c.name},
                        {"hits", c.hits},
                        {"min_margin", finite_or_null(c.min_margin)},
                        {"expect_hit", c.expect_hit},
                        {"passed", c.passed}});
  ordered_json reasons = ordered_json::object();
  for (const auto& [k, v] : r.exclusion_reasons) reasons[k] = v;
  return {{"config", to_json(r.config)},
          {"trials_used", r.trials_used},
          {"trials_excluded", r.trials_excluded},
          {"exclusion_reasons", reasons},
          {"orbits_examined", r.orbits_examined},
          {"frequencies", freq},
          {"margins",
           {{"min", finite_or_null(r.margins.min)},
            {"q01", finite_or_null(r.margins.q01)},
            {"q10", finite_or_null(r.margins.q10)},
            {"median", finite_or_null(r.margins.median)},
            {"max", finite_or_null(r.margins.max)}}},
          {"lambda0_hits", hits},
          {"controls", controls}};
}

ordered_json to_json(const ScalingFit& f) {
  return {{"slope", f.slope ? ordered_json(*f.slope) : ordered_json(nullptr)}, {"note", f.note}, {"rungs_used", f.rungs_used}};
}

ordered_json to_json(const DegeneracyResult& d) {
  ordered_json out = {{"kind", to_string(d.kind)}, {"multiplier", d.multiplier}, {"displacement_taylor", d.displacement_taylor}};
  if (d.normal_form) out["normal_form"] = {{"order", d.normal_form->order}, {"leading", d.normal_form->leading}};
  return out;
}

ordered_json to_json(const SplitPlan& p) {
  ordered_json out = {{"seed", {{"order", p.seed.order}, {"leading", p.seed.leading}}},
                      {"target", p.target},
                      {"delta", p.delta},
                      {"amplitude", p.amplitude},
                      {"roots", p.roots},
                      {"filler_roots", p.filler_roots},
                      {"window", p.window},
                      {"certified_count", p.certified_count},
                      {"min_margin", finite_or_null(p.min_margin)},
                      {"multipliers", p.multipliers},
                      {"perturbation_norm", p.perturbation_norm},
                      {"perturbation_bound", p.perturbation_bound},
                      {"attempts", p.attempts},
                      {"map", map_to_json(p.map)}};
  if (p.n1) out["n1"] = *p.n1;
  if (p.a_n1) out["a_n1"] = *p.a_n1;
  return out;
}

ordered_json to_json(const SparsePoly& p) {
  ordered_json terms = ordered_json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back({{"exponents", it->first}, {"coefficient", it->second.get_str()}});
  return {{"variables", p.variables()}, {"terms", terms}, {"text", p.to_string()}};
}

ordered_json to_json(const NonzeroCertificate& c) {
  ordered_json pt = ordered_json::array();
  for (const mpq_class& q : c.point) pt.push_back(q_str(q));
  return {{"point", pt}, {"value", q_str(c.value)}, {"value_imag", q_str(c.value_imag)}};
}

ordered_json to_json(const EliminationResult& r) {
  ordered_json deg = ordered_json::object();
  for (const auto& [k, v] : r.degrees) deg[k] = v;
  return {{"degree", r.degree},
          {"period", r.period},
          {"resultant", to_json(r.resultant)},
          {"degrees", deg},
          {"certificate", to_json(r.certificate)}};
}

ordered_json to_json(const LambdaSlice& s) {
  return {{"lambda0", {q_str(s.lambda0.re), q_str(s.lambda0.im)}},
          {"real", to_json(s.real)},
          {"imag", to_json(s.imag)},
          {"certificate", to_json(s.certificate)},
          {"certificate_valid", validate_certificate(s)}};
}

}  // namespace orbitlab
