#pragma once

// Weight operators: block-diagonal endomorphisms of the truncated universal
// Verma module, one square matrix per weight block. Entries live in the
// field's scalar type (exact rational functions, or values at a point).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "expro/error.hpp"
#include "expro/field.hpp"
#include "expro/matrix.hpp"
#include "expro/verma.hpp"

namespace expro {

// Shared, cached truncated module for (n, depth).
std::shared_ptr<const TruncatedVerma> verma_window(int n, int depth);

// Cached symbolic matrix of F_r^k E_r^k on one block.
const Matrix<RatFunc>& root_power_matrix(int n, const Root& r, int k, const WeightKey& key);
// Cached symbolic Shapovalov Gram matrix of one block.
const Matrix<RatFunc>& cached_gram(int n, const WeightKey& key);

template <class F>
Matrix<typename F::Scalar> lift_matrix(const F& field, const Matrix<RatFunc>& m) {
  Matrix<typename F::Scalar> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = field.lift(m(i, j));
  return out;
}

template <class S>
Matrix<S> rational_matrix(const Matrix<Rational>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = S(m(i, j));
  return out;
}

template <class F>
class WeightOperator {
 public:
  using Scalar = typename F::Scalar;
  using Block = Matrix<Scalar>;

  // The zero operator.
  WeightOperator(std::shared_ptr<const TruncatedVerma> module, F field);
  static WeightOperator identity(std::shared_ptr<const TruncatedVerma> module, F field);
  // Multiplication by a scalar that depends only on the block.
  template <class Fn>
  static WeightOperator block_scalar(std::shared_ptr<const TruncatedVerma> module, F field, Fn&& scalar_of) {
    WeightOperator op(module, field);
    for (const auto& k : module->weights()) {
      Scalar s = scalar_of(k);
      op.blocks_[k] = s * Block::identity(module->dimension(k));
    }
    return op;
  }

  const TruncatedVerma& module() const { return *module_; }
  const std::shared_ptr<const TruncatedVerma>& module_ptr() const { return module_; }
  const F& field() const { return field_; }
  int depth() const { return module_->depth(); }

  const std::map<WeightKey, Block>& blocks() const { return blocks_; }
  const Block& block(const WeightKey& k) const;
  void set_block(const WeightKey& k, Block b);

  std::vector<Scalar> apply(const WeightKey& k, const std::vector<Scalar>& v) const { return block(k).apply(v); }
  // Coordinates of a module vector in this field.
  std::vector<Scalar> lift_vector(const VermaVector& v, const WeightKey& k) const;
  std::vector<Scalar> apply_to(const VermaVector& v, const WeightKey& k) const { return apply(k, lift_vector(v, k)); }

  // Weights whose block is nonzero.
  std::vector<WeightKey> support() const;

  friend WeightOperator operator*(const WeightOperator& a, const WeightOperator& b) {
    WeightOperator c(a.module_, a.field_);
    for (const auto& [k, m] : a.blocks_) c.blocks_[k] = m * b.block(k);
    return c;
  }
  friend WeightOperator operator+(const WeightOperator& a, const WeightOperator& b) {
    WeightOperator c(a.module_, a.field_);
    for (const auto& [k, m] : a.blocks_) c.blocks_[k] = m + b.block(k);
    return c;
  }
  friend WeightOperator operator-(const WeightOperator& a, const WeightOperator& b) {
    WeightOperator c(a.module_, a.field_);
    for (const auto& [k, m] : a.blocks_) c.blocks_[k] = m - b.block(k);
    return c;
  }

 private:
  std::shared_ptr<const TruncatedVerma> module_;
  F field_;
  std::map<WeightKey, Block> blocks_;
};

enum class Mode { kSymbolic, kGeneric };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct CheckOptions {
  Mode mode = Mode::kSymbolic;
  std::uint64_t seed = 20240611;
  int trials = 3;
};

struct Witness {
  WeightKey weight;
  int row = 0;
  int col = 0;
  std::string row_basis;
  std::string col_basis;
  std::string lhs;
  std::string rhs;
  std::string field;
};

struct Verdict {
  bool equal = true;
  std::string mode = "symbolic";
  int depth = 0;
  std::vector<std::string> points;
  std::optional<Witness> witness;
};

template <class F>
Verdict op_equal(const WeightOperator<F>& a, const WeightOperator<F>& b);

// Uniform random integer point in [-10^6, 10^6]^n.
Weight random_point(std::mt19937_64& rng, int n);

// Runs build(field) -> pair of operators, symbolically or at random points.
// Points where some coefficient has a pole are resampled.
template <class Build>
Verdict check_identity(int n, Build&& build, const CheckOptions& opts) {
  if (opts.mode == Mode::kSymbolic) {
    auto [lhs, rhs] = build(SymbolicField{});
    Verdict v = op_equal(lhs, rhs);
    v.mode = "symbolic";
    return v;
  }
  std::mt19937_64 rng(opts.seed);
  Verdict result;
  result.mode = "generic";
  for (int trial = 0; trial < opts.trials; ++trial) {
    for (int attempt = 0;; ++attempt) {
      PointField field{random_point(rng, n)};
      try {
        auto [lhs, rhs] = build(field);
        Verdict v = op_equal(lhs, rhs);
        result.depth = v.depth;
        result.points.push_back(weight_to_string(field.point));
        if (!v.equal) {
          result.equal = false;
          result.witness = v.witness;
          return result;
        }
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPoleAtPoint && e.code() != ErrorCode::kZeroDivisor) throw;
        if (attempt >= 50) throw Error(ErrorCode::kInternal, "no pole-free point found");
      }
    }
  }
  return result;
}

// Same sampling loop for arbitrary per-field computations; fn(field) -> bool.
template <class Fn>
bool holds_generically(int n, Fn&& fn, const CheckOptions& opts) {
  if (opts.mode == Mode::kSymbolic) return fn(SymbolicField{});
  std::mt19937_64 rng(opts.seed);
  for (int trial = 0; trial < opts.trials; ++trial) {
    for (int attempt = 0;; ++attempt) {
      PointField field{random_point(rng, n)};
      try {
        if (!fn(field)) return false;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPoleAtPoint && e.code() != ErrorCode::kZeroDivisor) throw;
        if (attempt >= 50) throw Error(ErrorCode::kInternal, "no pole-free point found");
      }
    }
  }
  return true;
}

// A* = G^-1 A^T G per block, the adjoint for the Shapovalov form.
template <class F>
WeightOperator<F> shapovalov_adjoint(const WeightOperator<F>& a);

extern template class WeightOperator<SymbolicField>;
extern template class WeightOperator<PointField>;

}  // namespace expro
