#pragma once

// The universal Verma module M(g) = U(n-) F(h), truncated to weights -nu with
// height(nu) <= depth. Vectors carry their F(h) coefficients on the right.

#include <map>
#include <string>
#include <vector>

#include "expro/envelope.hpp"
#include "expro/matrix.hpp"

namespace expro {

// Simple-root coordinates of nu; the block of weight -nu.
using WeightKey = std::vector<int>;

int key_height(const WeightKey& k);
Weight key_weight(const WeightKey& k, int n);  // nu in epsilon coordinates
std::string key_string(const WeightKey& k);    // "1,0,2"

class VermaVector {
 public:
  using Coeffs = std::map<MultiIndex, RatFunc>;

  VermaVector() = default;
  explicit VermaVector(int n) : n_(n) {}
  static VermaVector basis(int n, const MultiIndex& k, const RatFunc& c = RatFunc(1));

  int rank() const { return n_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  RatFunc coefficient(const MultiIndex& k) const;
  void add(const MultiIndex& k, const RatFunc& c);

  VermaVector& operator+=(const VermaVector& o);
  // Right multiplication by a coefficient.
  VermaVector operator*(const RatFunc& c) const;
  friend bool operator==(const VermaVector& a, const VermaVector& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  int n_ = 0;
  Coeffs coeffs_;
};

class TruncatedVerma {
 public:
  TruncatedVerma(int n, int depth);

  int rank() const { return n_; }
  int depth() const { return depth_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const std::vector<Root>& roots() const { return roots_; }
  // Blocks in graded-lexicographic order (height, then coordinates descending).
  const std::vector<WeightKey>& weights() const { return weights_; }
  bool contains(const WeightKey& k) const { return basis_.count(k) > 0; }
  const std::vector<MultiIndex>& basis(const WeightKey& k) const;
  int dimension(const WeightKey& k) const { return static_cast<int>(basis(k).size()); }
  int position(const WeightKey& k, const MultiIndex& idx) const;
  WeightKey key_of(const MultiIndex& idx) const;

  // Left action; throws truncation-overflow when a term leaves the window.
  VermaVector apply(const PbwElement& x, const VermaVector& v) const;
  // F^K * v, which needs no Cartan bookkeeping (constant coefficients).
  std::map<MultiIndex, Rational> f_monomial_times(const MultiIndex& k, const MultiIndex& j) const;

  // Matrix of a weight-zero element on one block, columns = basis images.
  Matrix<RatFunc> element_matrix(const PbwElement& x, const WeightKey& k) const;

  RatFunc shapovalov(const VermaVector& u, const VermaVector& v) const;
  Matrix<RatFunc> gram_matrix(const WeightKey& k) const;

  std::vector<RatFunc> coordinates(const VermaVector& v, const WeightKey& k) const;
  VermaVector from_coordinates(const std::vector<RatFunc>& c, const WeightKey& k) const;

 private:
  int n_;
  int depth_;
  std::vector<Root> roots_;
  std::vector<WeightKey> weights_;
  std::map<WeightKey, std::vector<MultiIndex>> basis_;
};

// Number of ways to write nu as an N-combination of positive roots.
long kostant_partition_count(const WeightKey& nu);

}  // namespace expro
