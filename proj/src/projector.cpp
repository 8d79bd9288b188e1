#include "expro/projector.hpp"

#include <algorithm>
#include <set>

#include "expro/lattice.hpp"

namespace expro {

namespace {

template <class S>
using Vec = std::vector<S>;

WeightKey add_keys(const WeightKey& a, const WeightKey& b) {
  WeightKey c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

// F^k * v for v in the block `from`; the result lives in from + |k|.
template <class S>
Vec<S> f_times(const TruncatedVerma& m, const MultiIndex& k, const WeightKey& from, const Vec<S>& v) {
  WeightKey to = add_keys(from, m.key_of(k));
  Vec<S> out(m.dimension(to), S(0));
  const auto& basis = m.basis(from);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (scalar_is_zero(v[j])) continue;
    for (const auto& [idx, c] : m.f_monomial_times(k, basis[j])) out[m.position(to, idx)] += v[j] * S(c);
  }
  return out;
}

bool supported_on(const MultiIndex& k, const std::vector<Root>& roots, const std::vector<Root>& allowed) {
  for (std::size_t r = 0; r < k.size(); ++r)
    if (k[r] != 0 && std::find(allowed.begin(), allowed.end(), roots[r]) == allowed.end()) return false;
  return true;
}

Weight negated(const Weight& w) { return Rational(-1) * w; }

template <class S>
S checked_div(const S& a, const S& b) {
  if (scalar_is_zero(b)) throw Error(ErrorCode::kPoleAtPoint, "denominator vanishes at the sample point");
  return a / b;
}

int root_position(const TruncatedVerma& m, const Root& r) {
  const auto& roots = m.roots();
  return static_cast<int>(std::find(roots.begin(), roots.end(), r) - roots.begin());
}

}  // namespace

RatFunc coroot_function(const Root& r) { return RatFunc::variable(r.i - 1) - RatFunc::variable(r.j - 1); }

bool is_dot_invariant(const RatFunc& p, int n) {
  for (int k = 1; k < n; ++k)
    if (!(dot_act(simple_reflection(k, n), p) == p)) return false;
  return true;
}

std::vector<WeightKey> uplus_weights(const TruncatedVerma& module, const SubalgebraSpec& l) {
  const auto u = l.complement_roots();
  std::vector<WeightKey> out;
  for (const auto& k : module.weights()) {
    if (key_height(k) == 0) continue;
    for (const auto& idx : module.basis(k))
      if (supported_on(idx, module.roots(), u)) {
        out.push_back(k);
        break;
      }
  }
  return out;
}

template <class F>
WeightOperator<F> element_action(ModulePtr module, const F& field, const PbwElement& x) {
  WeightOperator<F> op(module, field);
  for (const auto& k : module->weights()) op.set_block(k, lift_matrix(field, module->element_matrix(x, k)));
  return op;
}

template <class F>
WeightOperator<F> cartan_action(ModulePtr module, const F& field, const RatFunc& h) {
  const int n = module->rank();
  return WeightOperator<F>::block_scalar(module, field,
                                         [&](const WeightKey& k) { return field.lift_shifted(h, negated(key_weight(k, n))); });
}

template <class F>
WeightOperator<F> central_action(ModulePtr module, const F& field, const RatFunc& p) {
  if (!is_dot_invariant(p, module->rank()))
    throw Error(ErrorCode::kNotCentral, p.to_string() + " is not dot-invariant");
  auto s = field.lift(p);
  return WeightOperator<F>::block_scalar(module, field, [&](const WeightKey&) { return s; });
}

template <class F>
WeightOperator<F> qt_factor(ModulePtr module, const F& field, const Root& alpha, const Rational& t) {
  using S = typename F::Scalar;
  const int n = module->rank();
  const RatFunc h = coroot_function(alpha);
  WeightOperator<F> op(module, field);
  for (const auto& key : module->weights()) {
    const Weight nu = key_weight(key, n);
    const int dim = module->dimension(key);
    Matrix<S> block = Matrix<S>::identity(dim);
    RatFunc denom_product(1);
    Rational factorial(1);
    for (int k = 1; k * alpha.height() <= key_height(key); ++k) {
      denom_product *= (h + RatFunc(t + k)).inverse();
      factorial *= k;
      const auto& mk = root_power_matrix(n, alpha, k, key);
      if (mk.is_zero()) continue;
      Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
      S coeff = S(sign / factorial) * field.lift_shifted(denom_product, negated(nu));
      block = block + coeff * lift_matrix(field, mk);
    }
    op.set_block(key, std::move(block));
  }
  return op;
}

template <class F>
WeightOperator<F> ast_product(ModulePtr module, const F& field, const std::vector<Root>& order, const Weight& tau) {
  if (!is_normal_order(order, module->rank()))
    throw Error(ErrorCode::kInvalidOrder, "not a normal order of the positive roots");
  auto op = WeightOperator<F>::identity(module, field);
  for (const Root& r : order) op = op * qt_factor(module, field, r, tau[r.i - 1] - tau[r.j - 1]);
  return op;
}

PbwElement qt_series(int n, const Root& r, const Rational& t, int bound) {
  const RatFunc h = coroot_function(r);
  PbwElement q(n);
  RatFunc c(1);
  for (int k = 0; k * r.height() <= bound; ++k) {
    if (k > 0) c = c * (h + RatFunc(t + k)).inverse() * RatFunc(Rational(-1, k));
    q += PbwElement::root_vector(n, 'F', r, k) * PbwElement::root_vector(n, 'E', r, k) * PbwElement::scalar(n, c);
  }
  return q;
}

PbwElement ast_series_product(int n, const std::vector<Root>& order, const Weight& tau, int bound) {
  if (!is_normal_order(order, n)) throw Error(ErrorCode::kInvalidOrder, "not a normal order of the positive roots");
  PbwElement p = PbwElement::scalar(n, RatFunc(1));
  for (const Root& r : order) p = truncate_height(p * qt_series(n, r, tau[r.i - 1] - tau[r.j - 1], bound), bound);
  return p;
}

template <class F>
WeightOperator<F> extremal_projector(ModulePtr module, const F& field, const SubalgebraSpec& m) {
  auto op = WeightOperator<F>::identity(module, field);
  for (const auto& blk : m.blocks()) {
    for (std::size_t a = 0; a < blk.size(); ++a)
      for (std::size_t b = a + 1; b < blk.size(); ++b)
        op = op * qt_factor(module, field, Root{blk[a], blk[b]}, Rational(static_cast<long>(b - a)));
  }
  return op;
}

template <class F>
WeightOperator<F> direct_projector(ModulePtr module, const F& field, const SubalgebraSpec& l) {
  using S = typename F::Scalar;
  const auto& roots = module->roots();
  const auto lroots = l.positive_roots();
  const auto uroots = l.complement_roots();
  WeightOperator<F> op(module, field);
  for (const auto& key : module->weights()) {
    const auto& basis = module->basis(key);
    const int dim = static_cast<int>(basis.size());
    std::vector<std::vector<Rational>> image, kernel;
    for (int i = 0; i < dim; ++i)
      if (supported_on(basis[i], roots, lroots)) {
        std::vector<Rational> e(dim, Rational(0));
        e[i] = 1;
        image.push_back(e);
      }
    for (const Root& beta : uroots) {
      MultiIndex unit = unit_index(root_position(*module, beta), module->rank());
      WeightKey rest = key;
      bool ok = true;
      for (int s = beta.i; s < beta.j; ++s) ok = ok && --rest[s - 1] >= 0;
      if (!ok) continue;
      for (const auto& idx : module->basis(rest)) {
        std::vector<Rational> col(dim, Rational(0));
        for (const auto& [j, c] : module->f_monomial_times(unit, idx)) col[module->position(key, j)] += c;
        kernel.push_back(col);
      }
    }
    Matrix<Rational> kmat(dim, static_cast<int>(kernel.size()));
    for (std::size_t j = 0; j < kernel.size(); ++j) kmat.set_column(static_cast<int>(j), kernel[j]);
    auto indep = independent_columns(kmat);
    if (image.size() + indep.size() != static_cast<std::size_t>(dim))
      throw Error(ErrorCode::kDecompositionFailure, "image and kernel do not span block -(" + key_string(key) + ")");
    Matrix<Rational> b(dim, dim), d(dim, dim);
    int c = 0;
    for (const auto& v : image) {
      b.set_column(c, v);
      d(c, c) = 1;
      ++c;
    }
    for (int j : indep) b.set_column(c++, kmat.column(j));
    auto binv = inverse(b);
    if (!binv) throw Error(ErrorCode::kDecompositionFailure, "image and kernel overlap at -(" + key_string(key) + ")");
    op.set_block(key, rational_matrix<S>(b * d * *binv));
  }
  return op;
}

template <class F>
NestedBasis<F>::NestedBasis(ModulePtr module, F field, SubalgebraSpec m, SubalgebraSpec ml)
    : module_(std::move(module)), field_(std::move(field)), m_(std::move(m)), ml_(std::move(ml)) {
  if (!m_.contains(ml_)) throw Error(ErrorCode::kInvalidArgument, ml_.name() + " is not inside " + m_.name());
  const TruncatedVerma& M = *module_;
  const auto& roots = M.roots();
  const auto m_roots = m_.positive_roots();
  const auto ml_roots = ml_.positive_roots();
  std::vector<Root> off_m, m_off_ml;
  for (const Root& r : roots) {
    bool in_m = std::find(m_roots.begin(), m_roots.end(), r) != m_roots.end();
    bool in_ml = std::find(ml_roots.begin(), ml_roots.end(), r) != ml_roots.end();
    if (!in_m) off_m.push_back(r);
    if (in_m && !in_ml) m_off_ml.push_back(r);
  }
  std::vector<MultiIndex> outer, inner;
  std::map<WeightKey, std::vector<MultiIndex>> lower;
  for (const auto& key : M.weights())
    for (const auto& idx : M.basis(key)) {
      if (supported_on(idx, roots, off_m)) outer.push_back(idx);
      if (supported_on(idx, roots, m_off_ml)) inner.push_back(idx);
      if (supported_on(idx, roots, ml_roots)) lower[key].push_back(idx);
    }
  std::sort(outer.begin(), outer.end());
  std::sort(inner.begin(), inner.end());

  auto pm = extremal_projector(module_, field_, m_);
  auto pml = extremal_projector(module_, field_, ml_);
  std::map<WeightKey, std::vector<std::vector<Scalar>>> cols;
  for (const auto& I : outer) {
    const WeightKey kI = M.key_of(I);
    const auto hwv = pm.block(kI).column(M.position(kI, I));
    for (const auto& k : inner) {
      const WeightKey kIk = add_keys(kI, M.key_of(k));
      if (key_height(kIk) > M.depth()) continue;
      const auto w = pml.apply(kIk, f_times(M, k, kI, hwv));
      for (const auto& [lkey, lows] : lower) {
        const WeightKey total = add_keys(kIk, lkey);
        if (!M.contains(total)) continue;
        for (const auto& K : lows) {
          columns_[total].push_back(Column{I, k, K});
          cols[total].push_back(f_times(M, K, kIk, w));
        }
      }
    }
  }
  for (const auto& key : M.weights()) {
    const int dim = M.dimension(key);
    const auto& cs = cols[key];
    if (static_cast<int>(cs.size()) != dim)
      throw Error(ErrorCode::kDecompositionFailure, "copy count " + std::to_string(cs.size()) + " differs from dimension " +
                                                        std::to_string(dim) + " at -(" + key_string(key) + ")");
    Matrix<Scalar> c(dim, dim);
    for (int j = 0; j < dim; ++j) c.set_column(j, cs[j]);
    auto inv = inverse(c);
    if (!inv) throw Error(ErrorCode::kDecompositionFailure, "singular copy basis at -(" + key_string(key) + ")");
    matrix_.emplace(key, std::move(c));
    inverse_.emplace(key, std::move(*inv));
  }
}

template <class F>
std::vector<MultiIndex> NestedBasis<F>::inner_indices() const {
  std::set<MultiIndex> ks;
  for (const auto& [key, cols] : columns_)
    for (const auto& c : cols) ks.insert(c.inner);
  return {ks.begin(), ks.end()};
}

template <class F>
WeightOperator<F> NestedBasis<F>::component_projector(const MultiIndex& outer) const {
  return diagonal([&](const Column& c, const WeightKey&) { return c.outer == outer ? Scalar(1) : Scalar(0); });
}

template <class F>
WeightOperator<F> NestedBasis<F>::induce(const std::map<MultiIndex, RatFunc>& q) const {
  const int n = module_->rank();
  return diagonal([&](const Column& c, const WeightKey&) {
    auto it = q.find(c.inner);
    if (it == q.end() || it->second.is_zero()) return Scalar(0);
    return field_.lift_shifted(it->second, negated(index_weight(c.outer, n)));
  });
}

template <class F>
WeightOperator<F> NestedBasis<F>::relative_projector() const {
  return diagonal([&](const Column& c, const WeightKey&) {
    bool top = std::all_of(c.inner.begin(), c.inner.end(), [](int e) { return e == 0; });
    return top ? Scalar(1) : Scalar(0);
  });
}

template <class F>
WeightOperator<F> zhelobenko_product(ModulePtr module, const F& field, const RatFunc& p) {
  using S = typename F::Scalar;
  const int n = module->rank();
  if (!is_dot_invariant(p, n)) throw Error(ErrorCode::kNotCentral, p.to_string() + " is not dot-invariant");
  std::vector<std::pair<RatFunc, RatFunc>> factors;  // (p^nu, (p - p^nu)^-1)
  for (const auto& key : module->weights()) {
    if (key_height(key) == 0) continue;
    const RatFunc p_nu = p.shift(key_weight(key, n));
    const RatFunc den = p - p_nu;
    if (den.is_zero()) throw Error(ErrorCode::kDegenerateCenter, "p - p^nu vanishes for nu = " + key_string(key));
    factors.emplace_back(p_nu, den.inverse());
  }
  const S omega = field.lift(p);
  // Every factor is a scalar on each block; a block dies at its own weight.
  return WeightOperator<F>::block_scalar(module, field, [&](const WeightKey& k) {
    const Weight shift = negated(key_weight(k, n));
    std::vector<S> nums;
    for (const auto& f : factors) {
      nums.push_back(omega - field.lift_shifted(f.first, shift));
      if (nums.back() == S(0)) return S(0);
    }
    S s(1);
    for (std::size_t i = 0; i < factors.size(); ++i) s *= nums[i] * field.lift_shifted(factors[i].second, shift);
    return s;
  });
}

template <class F>
WeightOperator<F> sl2_casimir_product(ModulePtr module, const F& field, int from, int to) {
  if (module->rank() != 2) throw Error(ErrorCode::kInvalidRank, "the sl2 product needs n = 2");
  const Root a{1, 2};
  WeightOperator<F> fe(module, field);
  for (const auto& key : module->weights())
    fe.set_block(key, lift_matrix(field, root_power_matrix(2, a, 1, key)));
  auto id = WeightOperator<F>::identity(module, field);
  auto op = id;
  for (int i = from; i <= to; ++i) {
    RatFunc h = (RatFunc(i) * (coroot_function(a) + RatFunc(1 + i))).inverse();
    op = op * (id - fe * cartan_action(module, field, h));
  }
  return op;
}

template <class F>
WeightOperator<F> relative_casimir_product(const NestedBasis<F>& basis, const RatFunc& p) {
  using S = typename F::Scalar;
  const TruncatedVerma& M = basis.module();
  const int n = M.rank();
  if (!basis.outer_spec().is_whole()) throw Error(ErrorCode::kInvalidArgument, "relative Casimir product needs NB(g, l)");
  if (!is_dot_invariant(p, n)) throw Error(ErrorCode::kNotCentral, p.to_string() + " is not dot-invariant");
  const auto nus = uplus_weights(M, basis.inner_spec());
  const F& field = basis.field();
  const S p0 = field.lift(p);
  std::map<MultiIndex, S> cache;
  return basis.diagonal([&](const auto& col, const WeightKey&) {
    auto it = cache.find(col.inner);
    if (it != cache.end()) return it->second;
    const Weight ik = index_weight(col.inner, n);
    S s(1);
    for (const auto& key : nus) {
      const Weight nu = key_weight(key, n);
      const RatFunc den = p.shift(negated(ik)) - p.shift(nu - ik);
      if (den.is_zero()) throw Error(ErrorCode::kDegenerateCenter, "vanishing denominator at nu = " + weight_to_string(nu));
      s *= checked_div<S>(p0 - field.lift_shifted(p, nu - ik), field.lift(den));
    }
    return cache.emplace(col.inner, s).first->second;
  });
}

std::vector<Rational> thm41_values(const TruncatedVerma& module, const SubalgebraSpec& l, const Weight& t) {
  const int n = module.rank();
  std::set<Rational> values;
  for (const auto& key : uplus_weights(module, l)) {
    Weight nu = key_weight(key, n);
    Rational c = 0;
    for (int j = 0; j < n; ++j) c += nu[j] * t[j];
    values.insert(c);
  }
  return {values.begin(), values.end()};
}

namespace {

void check_thm41_input(const SubalgebraSpec& outer, const SubalgebraSpec& l, const Weight& t) {
  if (!outer.is_whole()) throw Error(ErrorCode::kInvalidArgument, "T-product needs NB(g, l)");
  bool ok = false;
  try {
    ok = in_z_plus(t, l);
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) throw Error(ErrorCode::kInvalidT, weight_to_string(t) + " is not in z+(" + l.name() + ")");
}

// base(x) = T(x) + c - (w.T)(x) for every value c and rearrangement S = wT.
std::vector<RatFunc> thm41_bases(const TruncatedVerma& module, const SubalgebraSpec& l, const Weight& t) {
  const int n = module.rank();
  RatFunc tx(0);
  for (int j = 0; j < n; ++j) tx += RatFunc(t[j]) * RatFunc::variable(j);
  std::vector<RatFunc> out;
  for (const Rational& c : thm41_values(module, l, t))
    for (const Weight& sp : distinct_permutations(t)) out.push_back(tx + RatFunc(c) - dot_image_function(sp, t));
  return out;
}

}  // namespace

template <class F>
WeightOperator<F> thm41_product(const NestedBasis<F>& basis, const Weight& t) {
  using S = typename F::Scalar;
  const TruncatedVerma& M = basis.module();
  const int n = M.rank();
  check_thm41_input(basis.outer_spec(), basis.inner_spec(), t);
  const auto bases = thm41_bases(M, basis.inner_spec(), t);
  const F& field = basis.field();
  std::map<MultiIndex, S> cache;
  return basis.diagonal([&](const auto& col, const WeightKey&) {
    auto it = cache.find(col.inner);
    if (it != cache.end()) return it->second;
    const Weight ik = index_weight(col.inner, n);
    Rational t_of_k = 0;
    for (int j = 0; j < n; ++j) t_of_k += t[j] * ik[j];
    S s(1);
    for (const RatFunc& base : bases) s *= checked_div<S>(field.lift(base - RatFunc(t_of_k)), field.lift_shifted(base, negated(ik)));
    return cache.emplace(col.inner, s).first->second;
  });
}

template <class F>
std::vector<Poly> thm41_denominators(const NestedBasis<F>& basis, const Weight& t) {
  check_thm41_input(basis.outer_spec(), basis.inner_spec(), t);
  std::vector<Poly> out;
  for (const RatFunc& base : thm41_bases(basis.module(), basis.inner_spec(), t)) {
    const Poly& d = base.numerator();
    if (!d.is_constant() && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  return out;
}

#define EXPRO_INSTANTIATE(F)                                                                                \
  template WeightOperator<F> element_action(ModulePtr, const F&, const PbwElement&);                        \
  template WeightOperator<F> cartan_action(ModulePtr, const F&, const RatFunc&);                            \
  template WeightOperator<F> central_action(ModulePtr, const F&, const RatFunc&);                           \
  template WeightOperator<F> qt_factor(ModulePtr, const F&, const Root&, const Rational&);                  \
  template WeightOperator<F> ast_product(ModulePtr, const F&, const std::vector<Root>&, const Weight&);      \
  template WeightOperator<F> extremal_projector(ModulePtr, const F&, const SubalgebraSpec&);                \
  template WeightOperator<F> direct_projector(ModulePtr, const F&, const SubalgebraSpec&);                  \
  template class NestedBasis<F>;                                                                            \
  template WeightOperator<F> zhelobenko_product(ModulePtr, const F&, const RatFunc&);                       \
  template WeightOperator<F> sl2_casimir_product(ModulePtr, const F&, int, int);                            \
  template WeightOperator<F> relative_casimir_product(const NestedBasis<F>&, const RatFunc&);               \
  template WeightOperator<F> thm41_product(const NestedBasis<F>&, const Weight&);                            \
  template std::vector<Poly> thm41_denominators(const NestedBasis<F>&, const Weight&);

EXPRO_INSTANTIATE(SymbolicField)
EXPRO_INSTANTIATE(PointField)

}  // namespace expro
