#pragma once

// JSON views of operators, verdicts, solver results and lattices.

#include <string>

#include "json.hpp"

#include "expro/solver.hpp"

namespace expro {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// {"schema_version", "command", "result"}
Json report_envelope(const std::string& command, Json result);

Json to_json(const Verdict& v);
Json to_json(const AmbiguityReport& a);
Json to_json(const DenominatorLattice& lat);
Json to_json(const PTPolynomial& p);
Json to_json(const FactorizationResult& r, int n);
Json to_json(const ConjectureReport& c, int n);

template <class F>
Json operator_to_json(const WeightOperator<F>& op) {
  const TruncatedVerma& m = op.module();
  Json blocks = Json::array();
  for (const auto& k : m.weights()) {
    Json basis = Json::array();
    for (const auto& idx : m.basis(k)) basis.push_back(monomial_string('F', idx, m.rank()));
    const auto& b = op.block(k);
    Json rows = Json::array();
    for (int i = 0; i < b.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < b.cols(); ++j) row.push_back(F::scalar_string(b(i, j)));
      rows.push_back(std::move(row));
    }
    blocks.push_back({{"weight", key_string(k)}, {"basis", std::move(basis)}, {"matrix", std::move(rows)}});
  }
  return {{"n", m.rank()}, {"depth", m.depth()}, {"field", op.field().describe()}, {"blocks", std::move(blocks)}};
}

}  // namespace expro
