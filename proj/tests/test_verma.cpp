#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "expro/error.hpp"
#include "expro/operator.hpp"
#include "expro/projector.hpp"
#include "expro/verma.hpp"

using namespace expro;

namespace {

RatFunc x(int i) { return RatFunc::variable(i - 1); }

WeightKey root_key(const Root& r, int n) {
  WeightKey k(n - 1, 0);
  for (int s = r.i; s < r.j; ++s) k[s - 1] = 1;
  return k;
}

bool key_le(const WeightKey& a, const WeightKey& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

WeightKey key_minus(WeightKey a, const WeightKey& b, int times = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= times * b[i];
  return a;
}

// Coefficients of prod_{a in roots} 1 / (1 - e^a), coin-change style, up to `limit`.
std::map<WeightKey, long> partition_table(const std::vector<Root>& roots, int n, const WeightKey& limit) {
  std::map<WeightKey, long> table;
  std::vector<WeightKey> keys{WeightKey(n - 1, 0)};
  for (std::size_t i = 0; i < limit.size(); ++i) {
    std::vector<WeightKey> next;
    for (const auto& k : keys)
      for (int c = 0; c <= limit[i]; ++c) {
        WeightKey m = k;
        m[i] = c;
        next.push_back(m);
      }
    keys = next;
  }
  std::sort(keys.begin(), keys.end(), [](const WeightKey& a, const WeightKey& b) { return key_height(a) < key_height(b); });
  for (const auto& k : keys) table[k] = key_height(k) == 0 ? 1 : 0;
  for (const Root& r : roots) {
    const WeightKey rk = root_key(r, n);
    for (const auto& k : keys)
      if (key_height(k) > 0 && key_le(rk, k)) table[k] += table[key_minus(k, rk)];
  }
  return table;
}

// prod_{a > 0} prod_{r >= 1} (H_a + rho(H_a) - r)^{P(nu - r a)}
RatFunc jantzen_product(int n, const WeightKey& nu) {
  const auto kostant = partition_table(positive_roots(n), n, nu);
  RatFunc out(1);
  for (const Root& a : positive_roots(n)) {
    const WeightKey ak = root_key(a, n);
    for (int r = 1; key_le(WeightKey(ak.size(), 0), key_minus(nu, ak, r)); ++r) {
      const long mult = kostant.at(key_minus(nu, ak, r));
      const RatFunc f = x(a.i) - x(a.j) + RatFunc(a.height() - r);
      out *= f.pow(static_cast<int>(mult));
    }
  }
  return out;
}

PbwElement gen(int n, int a, int b) { return PbwElement::gl_basis(n, a, b); }

}  // namespace

TEST_CASE("sl2 module action and form") {
  TruncatedVerma m(2, 4);
  const VermaVector f = VermaVector::basis(2, MultiIndex{1});
  const VermaVector one = VermaVector::basis(2, MultiIndex{0});
  const VermaVector ef = m.apply(PbwElement::root_vector(2, 'E', Root{1, 2}), f);
  CHECK(ef == one * (x(1) - x(2)));
  CHECK(m.shapovalov(f, f) == x(1) - x(2));
  CHECK(m.shapovalov(one, one) == RatFunc(1));
  CHECK(m.gram_matrix(WeightKey{2})(0, 0) == RatFunc::parse("2*(x1-x2)*(x1-x2-1)"));
  CHECK_THROWS_AS(m.apply(PbwElement::root_vector(2, 'F', Root{1, 2}),
                          VermaVector::basis(2, MultiIndex{4})),
                  Error);
}

TEST_CASE("weight spaces have Kostant dimensions") {
  for (int n = 2; n <= 4; ++n) {
    const int depth = n == 4 ? 3 : 4;
    TruncatedVerma m(n, depth);
    WeightKey limit(n - 1, depth);
    const auto table = partition_table(positive_roots(n), n, limit);
    for (const auto& k : m.weights()) {
      CHECK(m.dimension(k) == table.at(k));
      CHECK(kostant_partition_count(k) == table.at(k));
    }
  }
  CHECK(kostant_partition_count(WeightKey{1, 1}) == 2);
  CHECK(kostant_partition_count(WeightKey{1, 1, 1}) == 4);
}

TEST_CASE("Gram determinants follow the Shapovalov product formula") {
  for (int n = 2; n <= 3; ++n) {
    TruncatedVerma m(n, n == 2 ? 5 : 3);
    for (const auto& k : m.weights()) {
      const RatFunc det = determinant(m.gram_matrix(k));
      CHECK_FALSE(det.is_zero());
      const RatFunc ratio = det / jantzen_product(n, k);
      CHECK(ratio.is_constant());
    }
  }
}

TEST_CASE("Shapovalov form is symmetric and star-adjoint") {
  const int n = 3, depth = 3;
  TruncatedVerma m(n, depth);
  for (const auto& k : m.weights()) {
    const auto g = m.gram_matrix(k);
    CHECK(g == g.transpose());
  }
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const PbwElement X = gen(n, a, b);
      const PbwElement Xs = star(X);
      for (const auto& ku : m.weights())
        for (const auto& kv : m.weights()) {
          if (key_height(ku) + std::max(0, a - b) > depth || key_height(kv) + std::max(0, b - a) > depth) continue;
          for (const auto& iu : m.basis(ku))
            for (const auto& iv : m.basis(kv)) {
              const VermaVector u = VermaVector::basis(n, iu), v = VermaVector::basis(n, iv);
              CHECK(m.shapovalov(m.apply(X, u), v) == m.shapovalov(u, m.apply(Xs, v)));
            }
        }
    }
}

TEST_CASE("the module action is a homomorphism") {
  const int n = 3;
  TruncatedVerma m(n, 5);
  std::vector<PbwElement> elems;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) elems.push_back(gen(n, a, b));
  elems.push_back(PbwElement::scalar(n, RatFunc(1) / (x(1) - x(3) + RatFunc(7))));
  elems.push_back(PbwElement::scalar(n, x(2) * x(2)));
  for (const auto& key : m.weights()) {
    if (key_height(key) > 1) continue;
    for (const auto& idx : m.basis(key)) {
      const VermaVector v = VermaVector::basis(n, idx, x(1) + RatFunc(2));
      for (const auto& a : elems)
        for (const auto& b : elems) CHECK(m.apply(a * b, v) == m.apply(a, m.apply(b, v)));
    }
  }
}

TEST_CASE("copy basis for a nonstandard m has the right dimensions") {
  struct Case {
    int n;
    int depth;
    const char* m;
  };
  for (const Case c : {Case{3, 4, "13"}, Case{4, 3, "124"}}) {
    const auto mspec = SubalgebraSpec::parse(c.m, c.n);
    CHECK_FALSE(mspec.is_standard());
    auto module = verma_window(c.n, c.depth);
    NestedBasis nb(module, SymbolicField{}, mspec, SubalgebraSpec::cartan(c.n));
    const auto mroots = mspec.positive_roots();
    const auto mtable = partition_table(mroots, c.n, WeightKey(c.n - 1, c.depth));
    for (const auto& k : module->weights()) {
      const auto& cols = nb.columns(k);
      CHECK(static_cast<int>(cols.size()) == module->dimension(k));
      // Each outer index I contributes dim U(m-) at weight nu - |I|.
      std::map<MultiIndex, long> per_outer;
      for (const auto& col : cols) ++per_outer[col.outer];
      for (const auto& [outer, count] : per_outer) {
        const WeightKey rest = key_minus(k, module->key_of(outer));
        CHECK(count == mtable.at(rest));
      }
      long total = 0;
      for (const auto& kk : module->weights()) {
        if (!key_le(kk, k)) continue;
        for (const auto& idx : module->basis(kk)) {
          bool off_m = true;
          for (std::size_t r = 0; r < idx.size(); ++r)
            if (idx[r] > 0 && mspec.contains_root(module->roots()[r])) off_m = false;
          if (off_m) total += mtable.at(key_minus(k, kk));
        }
      }
      CHECK(total == module->dimension(k));
      const auto prod = nb.matrix(k) * nb.inverse_matrix(k);
      CHECK(prod == Matrix<RatFunc>::identity(module->dimension(k)));
      // P(m) F^I is killed by the raising operators of m.
      for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        if (std::any_of(cols[ci].inner.begin(), cols[ci].inner.end(), [](int e) { return e != 0; })) continue;
        const VermaVector w = module->from_coordinates(nb.matrix(k).column(static_cast<int>(ci)), k);
        for (const Root& r : mroots) CHECK(module->apply(PbwElement::root_vector(c.n, 'E', r), w).is_zero());
      }
    }
  }
}
