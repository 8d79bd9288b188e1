#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "expro/error.hpp"
#include "expro/field.hpp"
#include "expro/projector.hpp"
#include "expro/ratfunc.hpp"

using namespace expro;

namespace {

RatFunc x(int i) { return RatFunc::variable(i - 1); }

Weight point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> d(-500, 500);
  Weight w(n);
  for (auto& c : w) {
    c = Rational(d(rng), 7);
    c.canonicalize();
  }
  return w;
}

// Agreement of two expressions at random rational points.
template <class A, class B>
bool agree_at_points(A&& a, B&& b, int n, int trials = 20) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < trials; ++t) {
    const Weight p = point(rng, n);
    if (a(p) != b(p)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Poly a = Poly::variable(0) + Poly(1);
  const Poly b = Poly::variable(0) - Poly(1);
  CHECK((a * b) == Poly::variable(0).pow(2) - Poly(1));
  CHECK((a * b).divide_exact(a) == b);
  CHECK_FALSE(a.divide_exact(b).has_value());
  CHECK(gcd(a * b, a * a) == a);
  CHECK(Poly(3).is_constant());
  CHECK((a * b).total_degree() == 2);
  CHECK(Poly::variable(2).num_vars() == 3);
}

TEST_CASE("multivariate gcd") {
  const RatFunc a = x(1).pow(3) * x(2) + x(3) * x(3) - RatFunc(2);
  const RatFunc b = x(1) * x(1) * x(3) + x(2).pow(3) + RatFunc(1);
  const RatFunc c = (x(1) - x(3) + RatFunc(5)).pow(2) * (x(2) + x(3) - RatFunc(1));
  CHECK(gcd((a * c).numerator(), (b * c).numerator()) == c.numerator().monic());

  // Dense numerators against products of shifted x1 - x3: the factor divides iff
  // the numerator vanishes on x1 = x3 - s.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-9, 9);
  const std::vector<int> shifts{4, 5, 5, 6, 7};
  for (int trial = 0; trial < 6; ++trial) {
    RatFunc num(0);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        for (int k = 0; i + j + k <= 4; ++k) num += RatFunc(coeff(rng)) * x(1).pow(i) * x(2).pow(j) * x(3).pow(k);
    if (trial % 2) num *= (x(1) - x(3) + RatFunc(5)) * (x(1) - x(3) + RatFunc(7));
    Poly den(1), want(1);
    RatFunc rest = num;
    for (int s : shifts) {
      const Poly lin = (x(1) - x(3) + RatFunc(s)).numerator();
      den *= lin;
      const std::vector<int> perm{2, 1, 2};
      const Weight off{Rational(-s), 0, 0};
      if (rest.numerator().substitute_affine(perm, off).is_zero()) {
        want *= lin;
        rest = rest / RatFunc(lin);
      }
    }
    CHECK(gcd(num.numerator(), den) == want.monic());
  }
}

TEST_CASE("rational functions reduce to lowest terms") {
  const RatFunc r = (x(1) + RatFunc(1)) / (x(1) * x(1) - RatFunc(1));
  CHECK(r == RatFunc(1) / (x(1) - RatFunc(1)));
  CHECK(r.denominator() == (x(1) - RatFunc(1)).numerator());
  CHECK((r - r).is_zero());
  CHECK((r * r.inverse()).is_one());
  CHECK(RatFunc::parse("1/(x1-x3+1)") == RatFunc(1) / (x(1) - x(3) + RatFunc(1)));
  CHECK(RatFunc::parse("(x1-x2)^2") == (x(1) - x(2)).pow(2));
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), Error);
  CHECK_THROWS_AS(RatFunc::parse("x1+"), Error);
}

TEST_CASE("field operations agree with pointwise evaluation") {
  const RatFunc a = RatFunc::parse("(x1^2 - 3*x2 + 1)/(x1 - x2 + 2)");
  const RatFunc b = RatFunc::parse("(x2*x3 + 5)/(x1 + x3 - 1/2)");
  const RatFunc c = RatFunc::parse("x3 - 4");
  auto ev = [](const RatFunc& f) { return [f](const Weight& p) { return f.eval(p); }; };
  CHECK(agree_at_points(ev(a + b * c), [&](const Weight& p) -> Rational { return a.eval(p) + b.eval(p) * c.eval(p); }, 3));
  CHECK(agree_at_points(ev(a / b - c), [&](const Weight& p) -> Rational { return a.eval(p) / b.eval(p) - c.eval(p); }, 3));
  CHECK(agree_at_points(ev(a.pow(3)), [&](const Weight& p) -> Rational { Rational v = a.eval(p); return v * v * v; }, 3));
  CHECK((a * b) / b == a);
  CHECK((a + b) * c == a * c + b * c);
}

TEST_CASE("shifts and substitutions") {
  const RatFunc h = RatFunc::parse("1/(x1 - x2 + 1)");
  const Weight nu{2, -1};
  CHECK(h.shift(nu) == RatFunc::parse("1/(x1 - x2 + 4)"));
  CHECK(agree_at_points([&](const Weight& p) { return h.shift(nu).eval(p); },
                        [&](const Weight& p) { return h.eval(p + nu); }, 2));
  const std::vector<int> perm{1, 0};
  const std::vector<Rational> off{0, 0};
  CHECK(h.substitute_affine(perm, off) == RatFunc::parse("1/(x2 - x1 + 1)"));
  CHECK_THROWS_AS(h.eval(Weight{0, 1}), Error);
}

TEST_CASE("dot action on functions by direct substitution") {
  // (s1 . h)(mu) = h(s1 . mu) with s1 . (a, b) = (b - 1, a + 1)
  const RatFunc h = x(1) - x(2);
  const Permutation s1{1, 0};
  CHECK(dot_act(s1, h) == x(2) - x(1) - RatFunc(2));
  const RatFunc g = RatFunc::parse("x1^2 * x2 + 3*x1 - x2");
  CHECK(agree_at_points([&](const Weight& p) { return dot_act(s1, g).eval(p); },
                        [&](const Weight& p) {
                          const Weight q{p[1] - 1, p[0] + 1};
                          return g.eval(q);
                        },
                        2));
  CHECK(weyl_act(s1, x(1)) == x(2));
}

TEST_CASE("dot invariance") {
  // symmetric in x_i + rho_i
  const RatFunc sym2 = (x(1) + RatFunc(1)).pow(2) + x(2).pow(2);
  CHECK(is_dot_invariant(sym2, 2));
  CHECK(is_dot_invariant(RatFunc::parse("x1^2 + x2^2 + x1 - x2"), 2));
  CHECK_FALSE(is_dot_invariant(x(1), 2));
  const RatFunc e3 = (x(1) + RatFunc(2)) * (x(2) + RatFunc(1)) * x(3);
  CHECK(is_dot_invariant(e3, 3));
  CHECK_FALSE(is_dot_invariant(x(1) * x(2), 3));
}

TEST_CASE("coefficient fields") {
  const RatFunc h = RatFunc::parse("1/(x1 - x2 + 1)");
  const Weight nu{1, 0};
  SymbolicField s;
  CHECK(s.lift_shifted(h, nu) == h.shift(nu));
  PointField f{Weight{3, 1}};
  CHECK(f.lift(h) == Rational(1, 3));
  CHECK(f.lift_shifted(h, nu) == Rational(1, 4));
  CHECK(f.describe() == "point(3,1)");
  PointField pole{Weight{0, 1}};
  CHECK_THROWS_AS(pole.lift(h), Error);
  try {
    (void)pole.lift(h);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPoleAtPoint);
  }
}
