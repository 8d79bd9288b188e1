#include "expro/verma.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "expro/error.hpp"

namespace expro {

int key_height(const WeightKey& k) { return std::accumulate(k.begin(), k.end(), 0); }

Weight key_weight(const WeightKey& k, int n) {
  Weight w(n);
  for (int s = 0; s + 1 < n; ++s) {
    w[s] += k[s];
    w[s + 1] -= k[s];
  }
  return w;
}

std::string key_string(const WeightKey& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
  return out;
}

VermaVector VermaVector::basis(int n, const MultiIndex& k, const RatFunc& c) {
  VermaVector v(n);
  v.add(k, c);
  return v;
}

RatFunc VermaVector::coefficient(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? RatFunc(0) : it->second;
}

void VermaVector::add(const MultiIndex& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

VermaVector& VermaVector::operator+=(const VermaVector& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [k, c] : o.coeffs_) add(k, c);
  return *this;
}

VermaVector VermaVector::operator*(const RatFunc& c) const {
  VermaVector out(n_);
  for (const auto& [k, a] : coeffs_) out.add(k, a * c);
  return out;
}

std::string VermaVector::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += monomial_string('F', k, n_) + "*(" + c.to_string() + ")";
  }
  return out;
}

TruncatedVerma::TruncatedVerma(int n, int depth) : n_(n), depth_(depth), roots_(positive_roots(n)) {
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth must be non-negative");
  const int m = static_cast<int>(roots_.size());
  MultiIndex cur(m, 0);
  std::function<void(int, int)> rec = [&](int r, int height) {
    if (r == m) {
      basis_[key_of(cur)].push_back(cur);
      return;
    }
    for (int e = 0; height + e * roots_[r].height() <= depth; ++e) {
      cur[r] = e;
      rec(r + 1, height + e * roots_[r].height());
    }
    cur[r] = 0;
  };
  rec(0, 0);
  for (auto& [k, b] : basis_) {
    std::sort(b.begin(), b.end(), std::greater<>());
    weights_.push_back(k);
  }
  std::sort(weights_.begin(), weights_.end(), [](const WeightKey& a, const WeightKey& b) {
    int ha = key_height(a), hb = key_height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
}

const std::vector<MultiIndex>& TruncatedVerma::basis(const WeightKey& k) const {
  auto it = basis_.find(k);
  if (it == basis_.end())
    throw Error(ErrorCode::kTruncationOverflow, "weight -(" + key_string(k) + ") outside the window");
  return it->second;
}

int TruncatedVerma::position(const WeightKey& k, const MultiIndex& idx) const {
  const auto& b = basis(k);
  auto it = std::find(b.begin(), b.end(), idx);
  if (it == b.end()) throw Error(ErrorCode::kInternal, "index not in its weight block");
  return static_cast<int>(it - b.begin());
}

WeightKey TruncatedVerma::key_of(const MultiIndex& idx) const {
  WeightKey c(n_ - 1, 0);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (int s = roots_[r].i; s < roots_[r].j; ++s) c[s - 1] += idx[r];
  return c;
}

VermaVector TruncatedVerma::apply(const PbwElement& x, const VermaVector& v) const {
  const int m = num_roots();
  VermaVector out(n_);
  for (const auto& [key, h] : x.terms()) {
    for (const auto& [k, c] : v.coeffs()) {
      std::map<MultiIndex, RatFunc> cur{{k, RatFunc(1)}};
      auto step = [&](int a, int b) {
        std::map<MultiIndex, RatFunc> next;
        for (const auto& [idx, coeff] : cur)
          for (const auto& [idx2, g] : verma_generator_action(n_, a, b, idx)) {
            auto [it, inserted] = next.emplace(idx2, coeff * g);
            if (!inserted) it->second += coeff * g;
          }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        cur = std::move(next);
      };
      for (int r = m - 1; r >= 0; --r)
        for (int p = 0; p < key.e[r]; ++p) step(roots_[r].i, roots_[r].j);
      if (!h.is_one()) {
        for (auto& [idx, coeff] : cur) coeff *= h.shift(Rational(-1) * index_weight(idx, n_));
      }
      for (int r = m - 1; r >= 0; --r)
        for (int p = 0; p < key.f[r]; ++p) step(roots_[r].j, roots_[r].i);
      for (const auto& [idx, coeff] : cur) {
        if (index_height(idx, n_) > depth_)
          throw Error(ErrorCode::kTruncationOverflow,
                      "term " + monomial_string('F', idx, n_) + " leaves the depth " + std::to_string(depth_) + " window");
        out.add(idx, coeff * c);
      }
    }
  }
  return out;
}

std::map<MultiIndex, Rational> TruncatedVerma::f_monomial_times(const MultiIndex& k, const MultiIndex& j) const {
  std::map<MultiIndex, Rational> cur{{j, Rational(1)}};
  for (int r = num_roots() - 1; r >= 0; --r)
    for (int p = 0; p < k[r]; ++p) {
      std::map<MultiIndex, Rational> next;
      for (const auto& [idx, coeff] : cur)
        for (const auto& [idx2, g] : verma_generator_action(n_, roots_[r].j, roots_[r].i, idx)) {
          Rational c = coeff * g.numerator().constant_term();
          auto [it, inserted] = next.emplace(idx2, c);
          if (!inserted) it->second += c;
        }
      std::erase_if(next, [](const auto& kv) { return sgn(kv.second) == 0; });
      cur = std::move(next);
    }
  return cur;
}

std::vector<RatFunc> TruncatedVerma::coordinates(const VermaVector& v, const WeightKey& k) const {
  std::vector<RatFunc> c(dimension(k), RatFunc(0));
  for (const auto& [idx, coeff] : v.coeffs()) {
    if (key_of(idx) != k) throw Error(ErrorCode::kInternal, "vector component outside the requested block");
    c[position(k, idx)] = coeff;
  }
  return c;
}

VermaVector TruncatedVerma::from_coordinates(const std::vector<RatFunc>& c, const WeightKey& k) const {
  VermaVector v(n_);
  const auto& b = basis(k);
  for (std::size_t i = 0; i < b.size(); ++i) v.add(b[i], c[i]);
  return v;
}

Matrix<RatFunc> TruncatedVerma::element_matrix(const PbwElement& x, const WeightKey& k) const {
  const auto& b = basis(k);
  const int d = static_cast<int>(b.size());
  Matrix<RatFunc> mat(d, d);
  for (int j = 0; j < d; ++j) mat.set_column(j, coordinates(apply(x, VermaVector::basis(n_, b[j])), k));
  return mat;
}

RatFunc TruncatedVerma::shapovalov(const VermaVector& u, const VermaVector& v) const {
  const MultiIndex zero(num_roots(), 0);
  RatFunc total(0);
  for (const auto& [i, a] : u.coeffs()) {
    PbwElement s = star(PbwElement::monomial(n_, i, RatFunc(1), zero));
    for (const auto& [j, b] : v.coeffs()) {
      if (key_of(i) != key_of(j)) continue;
      RatFunc pairing = apply(s, VermaVector::basis(n_, j)).coefficient(zero);
      total += a * b * pairing;
    }
  }
  return total;
}

Matrix<RatFunc> TruncatedVerma::gram_matrix(const WeightKey& k) const {
  const auto& b = basis(k);
  const int d = static_cast<int>(b.size());
  Matrix<RatFunc> g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = shapovalov(VermaVector::basis(n_, b[i]), VermaVector::basis(n_, b[j]));
  return g;
}

long kostant_partition_count(const WeightKey& nu) {
  const int n = static_cast<int>(nu.size()) + 1;
  const auto roots = positive_roots(n);
  std::function<long(WeightKey, std::size_t)> count = [&](WeightKey rest, std::size_t r) -> long {
    if (r == roots.size()) return std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; }) ? 1 : 0;
    long total = 0;
    for (;;) {
      total += count(rest, r + 1);
      for (int s = roots[r].i; s < roots[r].j; ++s) --rest[s - 1];
      if (std::any_of(rest.begin(), rest.end(), [](int c) { return c < 0; })) break;
    }
    return total;
  };
  return count(nu, 0);
}

}  // namespace expro
