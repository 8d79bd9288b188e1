#include "expro/operator.hpp"

#include <mutex>
#include <tuple>

namespace expro {

std::shared_ptr<const TruncatedVerma> verma_window(int n, int depth) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TruncatedVerma>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, depth}];
  if (!slot) slot = std::make_shared<const TruncatedVerma>(n, depth);
  return slot;
}

const Matrix<RatFunc>& root_power_matrix(int n, const Root& r, int k, const WeightKey& key) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int, WeightKey>, Matrix<RatFunc>> cache;
  std::lock_guard lock(mu);
  auto id = std::make_tuple(n, r.i, r.j, k, key);
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  PbwElement x = PbwElement::root_vector(n, 'F', r, k) * PbwElement::root_vector(n, 'E', r, k);
  auto module = verma_window(n, key_height(key));
  return cache.emplace(id, module->element_matrix(x, key)).first->second;
}

const Matrix<RatFunc>& cached_gram(int n, const WeightKey& key) {
  static std::mutex mu;
  static std::map<std::pair<int, WeightKey>, Matrix<RatFunc>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({n, key});
  if (it != cache.end()) return it->second;
  auto module = verma_window(n, key_height(key));
  return cache.emplace(std::make_pair(n, key), module->gram_matrix(key)).first->second;
}

std::string mode_name(Mode m) { return m == Mode::kSymbolic ? "symbolic" : "generic"; }

Mode parse_mode(const std::string& s) {
  if (s == "symbolic") return Mode::kSymbolic;
  if (s == "generic") return Mode::kGeneric;
  throw Error(ErrorCode::kParse, "unknown mode '" + s + "'");
}

Weight random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  Weight p(n);
  for (auto& c : p) c = Rational(dist(rng));
  return p;
}

template <class F>
WeightOperator<F>::WeightOperator(std::shared_ptr<const TruncatedVerma> module, F field)
    : module_(std::move(module)), field_(std::move(field)) {
  for (const auto& k : module_->weights()) {
    int d = module_->dimension(k);
    blocks_.emplace(k, Block(d, d));
  }
}

template <class F>
WeightOperator<F> WeightOperator<F>::identity(std::shared_ptr<const TruncatedVerma> module, F field) {
  WeightOperator op(module, field);
  for (auto& [k, b] : op.blocks_) b = Block::identity(b.rows());
  return op;
}

template <class F>
const typename WeightOperator<F>::Block& WeightOperator<F>::block(const WeightKey& k) const {
  auto it = blocks_.find(k);
  if (it == blocks_.end()) throw Error(ErrorCode::kTruncationOverflow, "no block at weight -(" + key_string(k) + ")");
  return it->second;
}

template <class F>
void WeightOperator<F>::set_block(const WeightKey& k, Block b) {
  auto it = blocks_.find(k);
  if (it == blocks_.end()) throw Error(ErrorCode::kTruncationOverflow, "no block at weight -(" + key_string(k) + ")");
  if (b.rows() != it->second.rows() || b.cols() != it->second.cols())
    throw Error(ErrorCode::kInternal, "block size mismatch at -(" + key_string(k) + ")");
  it->second = std::move(b);
}

template <class F>
std::vector<typename F::Scalar> WeightOperator<F>::lift_vector(const VermaVector& v, const WeightKey& k) const {
  auto c = module_->coordinates(v, k);
  std::vector<Scalar> out(c.size(), Scalar(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) out[i] = field_.lift(c[i]);
  return out;
}

template <class F>
std::vector<WeightKey> WeightOperator<F>::support() const {
  std::vector<WeightKey> out;
  for (const auto& k : module_->weights())
    if (!blocks_.at(k).is_zero()) out.push_back(k);
  return out;
}

template <class F>
Verdict op_equal(const WeightOperator<F>& a, const WeightOperator<F>& b) {
  Verdict v;
  v.depth = std::min(a.depth(), b.depth());
  const TruncatedVerma& m = a.module();
  for (const auto& k : m.weights()) {
    if (key_height(k) > v.depth) continue;
    const auto& x = a.block(k);
    const auto& y = b.block(k);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        if (!(x(i, j) == y(i, j))) {
          v.equal = false;
          const auto& basis = m.basis(k);
          v.witness = Witness{k,
                              i,
                              j,
                              monomial_string('F', basis[i], m.rank()),
                              monomial_string('F', basis[j], m.rank()),
                              F::scalar_string(x(i, j)),
                              F::scalar_string(y(i, j)),
                              a.field().describe()};
          return v;
        }
  }
  return v;
}

template <class F>
WeightOperator<F> shapovalov_adjoint(const WeightOperator<F>& a) {
  WeightOperator<F> out(a.module_ptr(), a.field());
  for (const auto& k : a.module().weights()) {
    auto g = lift_matrix(a.field(), cached_gram(a.module().rank(), k));
    auto ginv = inverse(g);
    if (!ginv) throw Error(ErrorCode::kDegenerateForm, "singular Gram block at -(" + key_string(k) + ")");
    out.set_block(k, *ginv * a.block(k).transpose() * g);
  }
  return out;
}

template class WeightOperator<SymbolicField>;
template class WeightOperator<PointField>;
template Verdict op_equal(const WeightOperator<SymbolicField>&, const WeightOperator<SymbolicField>&);
template Verdict op_equal(const WeightOperator<PointField>&, const WeightOperator<PointField>&);
template WeightOperator<SymbolicField> shapovalov_adjoint(const WeightOperator<SymbolicField>&);
template WeightOperator<PointField> shapovalov_adjoint(const WeightOperator<PointField>&);

}  // namespace expro
