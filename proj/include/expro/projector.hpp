#pragma once

// Projector constructions as weight operators: AST factors Q_t and their
// ordered products, direct relative projectors, nested copy bases with
// component projectors and induced operators, central and Cartan actions,
// and the Casimir and T-type product formulas.

#include <map>
#include <memory>
#include <vector>

#include "expro/operator.hpp"

namespace expro {

using ModulePtr = std::shared_ptr<const TruncatedVerma>;

RatFunc coroot_function(const Root& r);  // H_ij = x_i - x_j
bool is_dot_invariant(const RatFunc& p, int n);
// Weights (as keys) of U(u+) for the complement of l, nonzero, inside the window.
std::vector<WeightKey> uplus_weights(const TruncatedVerma& module, const SubalgebraSpec& l);

template <class F>
WeightOperator<F> element_action(ModulePtr module, const F& field, const PbwElement& x);
template <class F>
WeightOperator<F> cartan_action(ModulePtr module, const F& field, const RatFunc& h);
// Central element known through its Harish-Chandra image p.
template <class F>
WeightOperator<F> central_action(ModulePtr module, const F& field, const RatFunc& p);

template <class F>
WeightOperator<F> qt_factor(ModulePtr module, const F& field, const Root& alpha, const Rational& t);
// Q_tau = prod_r Q_{tau(H_r)}(a_r) in the given order; tau in epsilon coordinates.
template <class F>
WeightOperator<F> ast_product(ModulePtr module, const F& field, const std::vector<Root>& order, const Weight& tau);
// Q_t(a_r) = sum_k (-1)^k / k! F_r^k E_r^k prod_{i=1}^k (H_r + t + i)^-1 as a
// PBW series, and the ordered product of such series; terms up to height bound.
PbwElement qt_series(int n, const Root& r, const Rational& t, int bound);
PbwElement ast_series_product(int n, const std::vector<Root>& order, const Weight& tau, int bound);

// P(m) from its own root system, for any (possibly non-standard) block spec.
template <class F>
WeightOperator<F> extremal_projector(ModulePtr module, const F& field, const SubalgebraSpec& m);
// Projection onto U(l-)F(h) along u- M.
template <class F>
WeightOperator<F> direct_projector(ModulePtr module, const F& field, const SubalgebraSpec& l);

// Basis of each weight block adapted to M = (+)_I U(m-) P(m)F^I and, inside
// every m-copy, to the ml-copies P(ml)(F^k hwv_I).
template <class F>
class NestedBasis {
 public:
  using Scalar = typename F::Scalar;

  struct Column {
    MultiIndex outer;  // I, supported off m
    MultiIndex inner;  // k, supported on m but off ml
    MultiIndex lower;  // K', supported on ml
  };

  NestedBasis(ModulePtr module, F field, SubalgebraSpec m, SubalgebraSpec ml);

  const TruncatedVerma& module() const { return *module_; }
  const ModulePtr& module_ptr() const { return module_; }
  const F& field() const { return field_; }
  const SubalgebraSpec& outer_spec() const { return m_; }
  const SubalgebraSpec& inner_spec() const { return ml_; }

  const std::vector<Column>& columns(const WeightKey& k) const { return columns_.at(k); }
  const Matrix<Scalar>& matrix(const WeightKey& k) const { return matrix_.at(k); }
  const Matrix<Scalar>& inverse_matrix(const WeightKey& k) const { return inverse_.at(k); }
  // All inner indices k that occur with the given outer index.
  std::vector<MultiIndex> inner_indices() const;

  // Operator acting by scalar_of(column, block) on each basis column.
  template <class Fn>
  WeightOperator<F> diagonal(Fn&& scalar_of) const {
    WeightOperator<F> op(module_, field_);
    for (const auto& k : module_->weights()) {
      const auto& cols = columns_.at(k);
      Matrix<Scalar> d(cols.size(), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) d(c, c) = scalar_of(cols[c], k);
      op.set_block(k, matrix_.at(k) * d * inverse_.at(k));
    }
    return op;
  }

  // Projection onto the m-copy generated by P(m)(F^I).
  WeightOperator<F> component_projector(const MultiIndex& outer) const;
  // X w_{I,k} -> X (w_{I,k} q_k(h - |I|)): right coefficient q_k on F^k.
  WeightOperator<F> induce(const std::map<MultiIndex, RatFunc>& q) const;
  // P(m, ml) = induce(delta_0).
  WeightOperator<F> relative_projector() const;

 private:
  ModulePtr module_;
  F field_;
  SubalgebraSpec m_;
  SubalgebraSpec ml_;
  std::map<WeightKey, std::vector<Column>> columns_;
  std::map<WeightKey, Matrix<Scalar>> matrix_;
  std::map<WeightKey, Matrix<Scalar>> inverse_;
};

// prod over nu of (Omega - p^nu)/(p - p^nu), Omega central with HC image p.
template <class F>
WeightOperator<F> zhelobenko_product(ModulePtr module, const F& field, const RatFunc& p);
// sl2 form prod_{i=from}^{to} (1 - F E / (i (H + 1 + i))).
template <class F>
WeightOperator<F> sl2_casimir_product(ModulePtr module, const F& field, int from, int to);
// Relative Casimir product over U(u+) weights; basis must be NB(g, l).
template <class F>
WeightOperator<F> relative_casimir_product(const NestedBasis<F>& basis, const RatFunc& p);
// Product of p_T(T + c) numerators over per-copy denominators; basis must be NB(g, l).
template <class F>
WeightOperator<F> thm41_product(const NestedBasis<F>& basis, const Weight& t);
// Distinct values nu(T) over U(u+) weights nu in the window.
std::vector<Rational> thm41_values(const TruncatedVerma& module, const SubalgebraSpec& l, const Weight& t);
// Harish-Chandra images of the non-constant denominators of thm41_product.
template <class F>
std::vector<Poly> thm41_denominators(const NestedBasis<F>& basis, const Weight& t);

extern template class NestedBasis<SymbolicField>;
extern template class NestedBasis<PointField>;

}  // namespace expro
