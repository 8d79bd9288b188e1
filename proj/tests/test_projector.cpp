#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "expro/error.hpp"
#include "expro/lattice.hpp"
#include "expro/projector.hpp"

using namespace expro;

namespace {

using Op = WeightOperator<SymbolicField>;

RatFunc x(int i) { return RatFunc::variable(i - 1); }

Op top_block(ModulePtr m) {
  return Op::block_scalar(m, SymbolicField{}, [](const WeightKey& k) { return RatFunc(key_height(k) == 0 ? 1 : 0); });
}

bool same(const Op& a, const Op& b) { return op_equal(a, b).equal; }

SubalgebraSpec spec(const char* s, int n) { return SubalgebraSpec::parse(s, n); }

Weight rho(int n) { return RootDatum(n).rho(); }

// Q_t on F^k: prod_{j=t-k}^{t-1} j / (y + j) with y = x1 - x2 - k + 1, zero for k >= t.
RatFunc qt_closed_form(int t, int k) {
  if (k >= t) return RatFunc(0);
  const RatFunc y = x(1) - x(2) - RatFunc(k - 1);
  RatFunc v(1);
  for (int j = t - k; j <= t - 1; ++j) v *= RatFunc(j) / (y + RatFunc(j));
  return v;
}

// Every vector of every block, pushed through op and then E_a, must vanish.
bool raising_kills_image(const Op& op, const std::vector<Root>& roots) {
  const TruncatedVerma& m = op.module();
  for (const auto& k : m.weights()) {
    if (key_height(k) == 0) continue;
    const auto& b = op.block(k);
    for (int c = 0; c < b.cols(); ++c) {
      const VermaVector v = m.from_coordinates(b.column(c), k);
      for (const Root& r : roots)
        if (!m.apply(PbwElement::root_vector(m.rank(), 'E', r), v).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("AST factor Q_t on sl2 matches its closed form") {
  auto m = verma_window(2, 6);
  for (int t = 1; t <= 4; ++t) {
    const Op q = qt_factor(m, SymbolicField{}, Root{1, 2}, Rational(t));
    for (const auto& k : m->weights()) CHECK(q.block(k)(0, 0) == qt_closed_form(t, key_height(k)));
  }
  const Op q2 = qt_factor(m, SymbolicField{}, Root{1, 2}, Rational(2));
  CHECK(q2.block(WeightKey{1})(0, 0) == RatFunc::parse("1/(x1-x2+1)"));
  CHECK(q2.block(WeightKey{2})(0, 0).is_zero());
}

TEST_CASE("AST factor agrees with its series acting on the module") {
  auto m = verma_window(3, 3);
  const Root a{1, 3};
  for (int t = 1; t <= 3; ++t) {
    const PbwElement series = qt_series(3, a, Rational(t), 3);
    const Op q = qt_factor(m, SymbolicField{}, a, Rational(t));
    for (const auto& k : m->weights())
      for (const auto& idx : m->basis(k)) {
        const VermaVector v = VermaVector::basis(3, idx);
        CHECK(m->coordinates(m->apply(series, v), k) == q.apply_to(v, k));
      }
  }
}

TEST_CASE("ordered AST products give the extremal projector") {
  for (int n = 2; n <= 3; ++n) {
    auto m = verma_window(n, 4);
    const Op p = ast_product(m, SymbolicField{}, positive_roots(n), rho(n));
    CHECK(same(p, top_block(m)));
    CHECK(same(p * p, p));
    CHECK(same(extremal_projector(m, SymbolicField{}, SubalgebraSpec::whole(n)), p));
    CHECK(same(direct_projector(m, SymbolicField{}, SubalgebraSpec::cartan(n)), p));
  }
  auto m = verma_window(3, 4);
  SymbolicField s;
  const Op middle = extremal_projector(m, s, spec("12", 3)) * qt_factor(m, s, Root{1, 3}, Rational(2)) *
                    extremal_projector(m, s, spec("23", 3));
  CHECK(same(middle, top_block(m)));
  CHECK_THROWS_AS(ast_product(m, s, {{1, 3}, {1, 2}, {2, 3}}, rho(3)), Error);
}

TEST_CASE("direct relative projectors") {
  auto m = verma_window(3, 4);
  SymbolicField s;
  const Op p23 = direct_projector(m, s, spec("23", 3));
  CHECK(same(p23 * p23, p23));
  CHECK(same(shapovalov_adjoint(p23), p23));
  CHECK(raising_kills_image(p23, spec("23", 3).complement_roots()));
  for (const auto& k : m->weights()) {
    if (k[0] != 0) {
      CHECK(p23.block(k).is_zero());
    } else {
      // F23^j spans the block and is fixed
      CHECK(p23.block(k) == Matrix<RatFunc>::identity(1));
    }
  }
  const WeightKey key{1, 1};
  const auto img = p23.apply_to(VermaVector::basis(3, unit_index(1, 3)), key);
  CHECK(std::all_of(img.begin(), img.end(), [](const RatFunc& c) { return c.is_zero(); }));
  const Op p12 = direct_projector(m, s, spec("12", 3));
  CHECK(same(shapovalov_adjoint(p12), p12));
  CHECK(raising_kills_image(p12, spec("12", 3).complement_roots()));
  CHECK(same(shapovalov_adjoint(Op::identity(m, s)), Op::identity(m, s)));
}

TEST_CASE("Q_t is self-adjoint but not a projection for t > 1") {
  auto m = verma_window(3, 3);
  for (int t = 1; t <= 3; ++t) {
    const Op q = qt_factor(m, SymbolicField{}, Root{1, 3}, Rational(t));
    CHECK(same(shapovalov_adjoint(q), q));
    CHECK(same(q * q, q) == (t == 1));
  }
}

TEST_CASE("copy decomposition for l13 in sl3") {
  auto m = verma_window(3, 4);
  SymbolicField s;
  NestedBasis nb(m, s, spec("13", 3), SubalgebraSpec::cartan(3));
  std::set<MultiIndex> outers;
  for (const auto& k : m->weights())
    for (const auto& c : nb.columns(k)) outers.insert(c.outer);
  Op sum(m, s);
  for (const auto& o : outers) {
    const Op c = nb.component_projector(o);
    CHECK(same(c * c, c));
    sum = sum + c;
  }
  CHECK(same(sum, Op::identity(m, s)));
  CHECK(same(nb.relative_projector(), extremal_projector(m, s, spec("13", 3))));
  // P(g, l13): the image is spanned by F13^j
  const Op top = nb.component_projector(MultiIndex(3, 0));
  const int f13 = 1;
  for (const auto& k : m->weights()) {
    const auto& b = top.block(k);
    if (k[0] != k[1]) {
      CHECK(b.is_zero());
      continue;
    }
    CHECK(rank(b) == 1);
    MultiIndex idx(3, 0);
    idx[f13] = k[0];
    const VermaVector v = VermaVector::basis(3, idx);
    CHECK(top.apply_to(v, k) == top.lift_vector(v, k));
  }

  std::map<MultiIndex, RatFunc> ones, warm;
  for (const auto& k : nb.inner_indices()) {
    ones[k] = RatFunc(1);
    const int deg = std::accumulate(k.begin(), k.end(), 0);
    warm[k] = deg == 0 ? RatFunc(1) : deg == 1 ? RatFunc::parse("1/(x1-x3+1)") : RatFunc(0);
  }
  CHECK(same(nb.induce(ones), Op::identity(m, s)));
  CHECK(same(nb.induce(warm), qt_factor(m, s, Root{1, 3}, Rational(2))));
}

TEST_CASE("central elements act through their Harish-Chandra images") {
  SymbolicField s;
  for (int n = 2; n <= 3; ++n) {
    auto m = verma_window(n, 4);
    const CentralElement omega = casimir_omega2(n);
    CHECK(same(central_action(m, s, omega.hc_image), element_action(m, s, omega.expression)));
    CHECK(same(central_action(m, s, RatFunc(1)), Op::identity(m, s)));
    CHECK(central_action(m, s, omega.hc_image).block(WeightKey(n - 1, 0))(0, 0) == omega.hc_image);
    CHECK_THROWS_AS(central_action(m, s, x(1)), Error);
  }
}

TEST_CASE("Casimir products") {
  SymbolicField s;
  auto m2 = verma_window(2, 4);
  const RatFunc p2 = casimir_omega2(2).hc_image;
  CHECK(same(zhelobenko_product(m2, s, p2), top_block(m2)));
  CHECK(same(sl2_casimir_product(m2, s, 1, 4), top_block(m2)));
  CHECK_THROWS_AS(zhelobenko_product(m2, s, RatFunc(3)), Error);

  // prod_{i=t}^{N} on F^k is Q_t(k) prod_{j=N-k+1}^{N} (y + j) / j
  auto m6 = verma_window(2, 6);
  for (int t = 1; t <= 3; ++t) {
    const int last = 9;
    const Op prod = sl2_casimir_product(m6, s, t, last);
    for (const auto& key : m6->weights()) {
      const int k = key_height(key);
      const RatFunc y = x(1) - x(2) - RatFunc(k - 1);
      RatFunc r(1);
      for (int j = last - k + 1; j <= last; ++j) r *= (y + RatFunc(j)) / RatFunc(j);
      CHECK(prod.block(key)(0, 0) == qt_closed_form(t, k) * r);
    }
  }

  auto m3 = verma_window(3, 3);
  const RatFunc p3 = casimir_omega2(3).hc_image;
  CHECK(same(zhelobenko_product(m3, s, p3), ast_product(m3, s, positive_roots(3), rho(3))));
  NestedBasis nbh(m3, s, SubalgebraSpec::whole(3), SubalgebraSpec::cartan(3));
  CHECK(same(relative_casimir_product(nbh, p3), zhelobenko_product(m3, s, p3)));
  NestedBasis nb23(m3, s, SubalgebraSpec::whole(3), spec("23", 3));
  CHECK(same(relative_casimir_product(nb23, p3), direct_projector(m3, s, spec("23", 3))));
}

TEST_CASE("T-type product and its denominators") {
  SymbolicField s;
  auto m = verma_window(3, 3);
  const auto l12 = spec("12", 3);
  const Weight t{1, 1, -2};
  NestedBasis nb(m, s, SubalgebraSpec::whole(3), l12);
  CHECK(same(thm41_product(nb, t), direct_projector(m, s, l12)));
  CHECK_THROWS_AS(thm41_product(nb, Weight{1, 0, -1}), Error);
  CHECK_THROWS_AS(thm41_product(nb, Weight{-1, -1, 2}), Error);

  const auto values = thm41_values(*m, l12, t);
  CHECK(values == std::vector<Rational>{3, 6, 9});
  const auto lattice = relative_t_lattice(t, values);
  // prod over rearrangements S != T of ((T - S)(x + rho) + c)
  for (std::size_t v = 0; v < values.size(); ++v) {
    Poly want(1);
    for (const Weight& sw : distinct_permutations(t)) {
      if (sw == t) continue;
      Poly lin(values[v]);
      for (int j = 0; j < 3; ++j) lin += (Poly::variable(j) + Poly(rho(3)[j])) * (t[j] - sw[j]);
      want *= lin;
    }
    CHECK(lattice.factors[v].product == want);
  }
  for (const Poly& d : thm41_denominators(nb, t)) CHECK(divide_by_lattice(d, lattice).divides);
}

TEST_CASE("p_T polynomial") {
  const PTPolynomial p = p_t_polynomial(Weight{1, 1, -2});
  CHECK(p.degree() == 3);
  CHECK(p.coefficients.size() == 4);
  for (const RatFunc& c : p.coefficients) CHECK(is_dot_invariant(c, 3));
  for (const RatFunc& r : p.roots) {
    RatFunc v(0), power(1);
    for (const RatFunc& c : p.coefficients) {
      v += c * power;
      power *= r;
    }
    CHECK(v.is_zero());
  }
  CHECK(p_t_polynomial(Weight{1, 0}).degree() == 2);
  CHECK(distinct_permutations(Weight{1, 1, -2}).size() == 3);
  CHECK(dot_image_function(Weight{1, 1, -2}, Weight{1, 1, -2}) == x(1) + x(2) - RatFunc(2) * x(3));
}

TEST_CASE("denominator lattices") {
  const auto abs2 = absolute_lattice(SubalgebraSpec::whole(2), 2);
  std::vector<Poly> pieces;
  for (const auto& f : abs2.factors)
    for (const auto& p : f.pieces) pieces.push_back(p);
  CHECK(pieces == std::vector<Poly>{(x(1) - x(2) + RatFunc(2)).numerator(), (x(1) - x(2) + RatFunc(3)).numerator()});

  const auto rel = relative_lattice(SubalgebraSpec::whole(3), spec("12", 3), 1);
  REQUIRE(rel.factors.size() == 1);
  CHECK(rel.factors[0].product == ((x(1) - x(3) + RatFunc(3)) * (x(2) - x(3) + RatFunc(2))).numerator());

  const Poly d = ((x(1) - x(2) + RatFunc(2)) * (x(1) - x(2) + RatFunc(2)) * (x(1) - x(2) + RatFunc(3))).numerator();
  CHECK(divide_by_lattice(d, abs2).divides);
  const auto bad = divide_by_lattice((x(1) - x(2) + RatFunc(5)).numerator(), abs2);
  CHECK_FALSE(bad.divides);
  CHECK(bad.residual == (x(1) - x(2) + RatFunc(5)).numerator());
}

TEST_CASE("poles of the extremal projector lie on the absolute lattice") {
  for (int n = 2; n <= 4; ++n) {
    const int bound = n == 2 ? 5 : n == 3 ? 3 : 2;
    const PbwElement series = ast_series_product(n, positive_roots(n), rho(n), bound);
    const auto lattice = absolute_lattice(SubalgebraSpec::whole(n), 2 * bound);
    for (const auto& [key, c] : right_form(series)) CHECK(divide_by_lattice(c.denominator(), lattice).divides);
  }
}
