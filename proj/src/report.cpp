#include "expro/report.hpp"

namespace expro {

namespace {

Json index_list(const std::vector<MultiIndex>& ks, int n) {
  Json out = Json::array();
  for (const auto& k : ks) out.push_back(monomial_string('F', k, n));
  return out;
}

}  // namespace

Json report_envelope(const std::string& command, Json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

Json to_json(const Verdict& v) {
  Json out{{"equal", v.equal}, {"mode", v.mode}, {"depth", v.depth}, {"points", v.points}};
  if (v.witness) {
    const Witness& w = *v.witness;
    out["witness"] = {{"weight", key_string(w.weight)}, {"row", w.row},       {"col", w.col},
                      {"row_basis", w.row_basis},        {"col_basis", w.col_basis}, {"lhs", w.lhs},
                      {"rhs", w.rhs},                    {"field", w.field}};
  }
  return out;
}

Json to_json(const AmbiguityReport& a) {
  Json out{{"ambiguous", a.ambiguous}};
  if (a.ambiguous) {
    out["weight"] = key_string(a.weight);
    out["dimension"] = a.dimension;
    out["side"] = a.side;
    out["witnesses"] = a.witnesses;
  }
  return out;
}

Json to_json(const DenominatorLattice& lat) {
  Json factors = Json::array();
  for (const auto& f : lat.factors) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces) pieces.push_back(p.to_string());
    factors.push_back({{"label", f.label}, {"product", f.product.to_string()}, {"pieces", std::move(pieces)}});
  }
  return {{"kind", lat.kind}, {"factors", std::move(factors)}};
}

Json to_json(const PTPolynomial& p) {
  Json roots = Json::array();
  for (const auto& r : p.roots) roots.push_back(r.to_string());
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients) coeffs.push_back(c.to_string());
  return {{"t", weight_to_string(p.t)}, {"degree", p.degree()}, {"roots", roots}, {"coefficients", coeffs},
          {"polynomial", p.to_string()}};
}

Json to_json(const FactorizationResult& r, int n) {
  Json q = Json::object();
  for (const auto& [k, v] : r.q) q[monomial_string('F', k, n)] = v.to_string();
  Json cone = Json::array();
  for (const auto& k : r.cone) cone.push_back(key_string(k));
  Json pivots = Json::array();
  for (const auto& p : r.pivots)
    pivots.push_back({{"k", monomial_string('F', p.k, n)}, {"weight", key_string(p.weight)}, {"pivot", p.pivot.to_string()}});
  Json ss = Json::object();
  for (const auto& [k, v] : r.in_semisimple_part) ss[monomial_string('F', k, n)] = v;
  Json out{{"status", r.status},
           {"cone", cone},
           {"q", q},
           {"undetermined", index_list(r.undetermined, n)},
           {"pivots", pivots},
           {"ambiguity", to_json(r.ambiguity)},
           {"nonzero_support", index_list(r.nonzero_support, n)},
           {"max_nonzero_height", r.max_nonzero_height},
           {"in_semisimple_part", ss},
           {"all_in_semisimple_part", r.all_in_semisimple_part},
           {"middle_is_standard", r.middle_is_standard}};
  if (r.failure_weight) out["failure_weight"] = key_string(*r.failure_weight);
  if (!r.failure_reason.empty()) out["failure_reason"] = r.failure_reason;
  if (r.reconstruction) out["reconstruction"] = to_json(*r.reconstruction);
  if (r.equals_relative_projector) out["equals_relative_projector"] = *r.equals_relative_projector;
  return out;
}

Json to_json(const ConjectureReport& c, int n) {
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back({{"where", e.where}, {"factor", e.factor.to_string()}, {"divides", e.divides}});
  Json extra = Json::array();
  for (const auto& p : c.extra_factors) extra.push_back(p.to_string());
  return {{"lattice", c.lattice},
          {"entries", entries},
          {"extra_factors", extra},
          {"no_extra_factors", c.no_extra_factors()},
          {"sparsity", index_list(c.sparsity, n)}};
}

}  // namespace expro
