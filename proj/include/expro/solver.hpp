#pragma once

// Factorization problems L * Q * R = T with an unknown middle factor
// Q = sum_k q_k P(m, ml)[k], solved weight by weight over the admissible cone.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expro/lattice.hpp"
#include "expro/projector.hpp"

namespace expro {

struct SolvedFactor {
  SubalgebraSpec m;
  SubalgebraSpec ml;
  std::map<MultiIndex, RatFunc> q;
};

// Carries a factor solved in gl_k into gl_n along index_map (1-based,
// index_map[i-1] is the image of i). The map must be increasing.
SolvedFactor embed_factor(const SolvedFactor& f, int n, const std::vector<int>& index_map);

// Solved middles available to factor names "Q(m|ml)".
using FactorContext = std::map<std::string, SolvedFactor>;

// Factor names:
//   "P(1234)", "P(12,34)"   extremal projector of the block spec
//   "P(123|12)"             relative projector P(m, ml)
//   "Q(13)"                 AST factor Q_{b-a}(a_ab)
//   "Q(124|12)"             a solved middle from the context
//   "1"                     identity
struct FactorSpec {
  enum class Kind { kIdentity, kExtremal, kRelative, kAst, kSolved };
  Kind kind = Kind::kIdentity;
  std::string name;
  SubalgebraSpec m;
  SubalgebraSpec ml;
  Root alpha;
};

FactorSpec parse_factor(const std::string& name, int n);
std::vector<std::string> split_factor_list(const std::string& text);

template <class F>
WeightOperator<F> build_factor(const FactorSpec& spec, ModulePtr module, const F& field, const FactorContext& ctx);
template <class F>
WeightOperator<F> build_product(const std::vector<std::string>& names, ModulePtr module, const F& field,
                                const FactorContext& ctx);

struct FactorizationProblem {
  int n = 3;
  SubalgebraSpec l;
  SubalgebraSpec m;
  SubalgebraSpec ml;
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::string target;  // empty: the direct projector P(g, l)
  int depth = 3;
  CheckOptions check;
};

// key=value lines: n, l, m, ml, left, right, target, depth, mode, seed, trials.
FactorizationProblem parse_problem(const std::string& text);

struct AmbiguityReport {
  bool ambiguous = false;
  WeightKey weight;
  int dimension = 1;
  std::string side;
  std::vector<std::string> witnesses;
};

struct PivotRecord {
  MultiIndex k;
  WeightKey weight;
  RatFunc pivot;
};

struct FactorizationResult {
  std::string status = "unique";  // unique | ambiguous | obstructed
  std::optional<WeightKey> failure_weight;
  std::string failure_reason;
  std::vector<WeightKey> cone;
  std::map<MultiIndex, RatFunc> q;
  std::vector<MultiIndex> undetermined;
  std::vector<PivotRecord> pivots;
  AmbiguityReport ambiguity;
  std::optional<Verdict> reconstruction;
  // Diagnostics.
  std::vector<MultiIndex> nonzero_support;
  int max_nonzero_height = 0;
  std::map<MultiIndex, bool> in_semisimple_part;
  bool all_in_semisimple_part = true;
  bool middle_is_standard = false;
  std::optional<bool> equals_relative_projector;
};

std::vector<WeightKey> admissible_cone(const FactorizationProblem& p, const FactorContext& ctx = {});
AmbiguityReport analyze_ambiguity(const FactorizationProblem& p, const FactorContext& ctx = {});
FactorizationResult solve(const FactorizationProblem& p, const FactorContext& ctx = {});

// True when every q_k is invariant under translations orthogonal to the
// coroots of m_ss.
bool depends_only_on_semisimple_part(const RatFunc& q, const SubalgebraSpec& m);

struct FactorizationCheck {
  Verdict verdict;
  bool root_partition = false;  // the disjoint-union property over factor subalgebras
  std::vector<std::string> factors;
};

// Composes the named factors and compares with the target (empty: P(g, l)).
FactorizationCheck verify_factorization(int n, const SubalgebraSpec& l, const std::vector<std::string>& factors,
                                        const std::string& target, int depth, const CheckOptions& opts,
                                        const FactorContext& ctx = {});

struct DenominatorEntry {
  std::string where;
  Poly factor;
  bool divides = false;
};

struct ConjectureReport {
  std::string lattice;
  std::vector<DenominatorEntry> entries;
  std::vector<Poly> extra_factors;
  std::vector<MultiIndex> sparsity;
  bool no_extra_factors() const { return extra_factors.empty(); }
};

// Denominators of the q_k on the Harish-Chandra side, against D(m, ml).
ConjectureReport conjecture_report(const FactorizationResult& r, const SubalgebraSpec& m, const SubalgebraSpec& ml,
                                   int bound);

}  // namespace expro
