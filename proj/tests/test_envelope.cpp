#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "expro/envelope.hpp"
#include "expro/error.hpp"
#include "expro/projector.hpp"

using namespace expro;

namespace {

RatFunc x(int i) { return RatFunc::variable(i - 1); }

PbwElement e(int n, int a, int b) { return PbwElement::gl_basis(n, a, b); }

// Random element: a few F^I h E^J terms with small exponents.
PbwElement random_element(std::mt19937_64& rng, int n, int terms) {
  const int nr = n * (n - 1) / 2;
  std::uniform_int_distribution<int> ex(0, 1), var(1, n), c(-3, 3);
  PbwElement out(n);
  for (int t = 0; t < terms; ++t) {
    MultiIndex f(nr, 0), g(nr, 0);
    for (int r = 0; r < nr; ++r) {
      f[r] = ex(rng) * ex(rng);
      g[r] = ex(rng) * ex(rng);
    }
    RatFunc h = RatFunc(c(rng)) + x(var(rng)) * RatFunc(c(rng));
    if (h.is_zero()) h = RatFunc(1);
    if (ex(rng)) h = h / (x(var(rng)) - x(var(rng)) + RatFunc(5));
    out.add_term(f, h, g);
  }
  return out;
}

// Omega_2 on a highest weight vector of weight lambda.
RatFunc casimir_eigenvalue(int n) {
  RatFunc v(0);
  for (int a = 1; a <= n; ++a) v += x(a) * x(a);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) v += x(a) - x(b);
  return v;
}

}  // namespace

TEST_CASE("sl2 relation E F = F E + H") {
  const PbwElement E = PbwElement::root_vector(2, 'E', Root{1, 2});
  const PbwElement F = PbwElement::root_vector(2, 'F', Root{1, 2});
  CHECK(E * F == F * E + PbwElement::scalar(2, x(1) - x(2)));
  CHECK(hc_project(E * F) == x(1) - x(2));
  CHECK(hc_project(F * E).is_zero());
  CHECK((E * F).ad_weight() == Weight{0, 0});
  CHECK_FALSE((E + F).ad_weight().has_value());
}

TEST_CASE("gl_n commutators match the matrix unit rule") {
  for (int n = 2; n <= 4; ++n)
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        for (int c = 1; c <= n; ++c)
          for (int d = 1; d <= n; ++d) {
            PbwElement want(n);
            if (b == c) want += e(n, a, d);
            if (d == a) want -= e(n, c, b);
            CHECK(commutator(e(n, a, b), e(n, c, d)) == want);
          }
}

TEST_CASE("Casimir element is central with the expected Harish-Chandra image") {
  for (int n = 2; n <= 4; ++n) {
    const CentralElement omega = casimir_omega2(n);
    CHECK(omega.hc_image == casimir_eigenvalue(n));
    CHECK(hc_project(omega.expression) == omega.hc_image);
    CHECK(is_dot_invariant(omega.hc_image, n));
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) CHECK(commutator(omega.expression, e(n, a, b)).is_zero());
  }
  CHECK(casimir_omega2(2).hc_image == RatFunc::parse("x1^2 + x2^2 + x1 - x2"));
}

TEST_CASE("PBW multiplication is associative") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 12; ++trial) {
      const PbwElement a = random_element(rng, n, 3);
      const PbwElement b = random_element(rng, n, 3);
      const PbwElement c = random_element(rng, n, 3);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("star is an involutive anti-automorphism") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const PbwElement a = random_element(rng, 3, 3);
    const PbwElement b = random_element(rng, 3, 3);
    CHECK(star(a * b) == star(b) * star(a));
    CHECK(star(star(a)) == a);
  }
  CHECK(star(e(3, 1, 3)) == e(3, 3, 1));
  CHECK(star(PbwElement::scalar(3, x(2))) == PbwElement::scalar(3, x(2)));
}

TEST_CASE("parsing and printing") {
  const PbwElement a = PbwElement::parse("F12^2 * (x1-x2)^-1 * E13 + 3 * H12", 3);
  CHECK(PbwElement::parse(a.to_string(), 3) == a);
  CHECK(PbwElement::parse("H12", 3) == PbwElement::scalar(3, x(1) - x(2)));
  CHECK(PbwElement::parse("E12 * F12", 2) == e(2, 1, 2) * e(2, 2, 1));
  CHECK_THROWS_AS(PbwElement::parse("F14", 3), Error);
}

TEST_CASE("AST series for sl2 has the closed-form coefficients") {
  // Q_1(a12) = sum_k (-1)^k / k! F^k E^k prod_{i=1}^k (H + 1 + i)^-1, H = x1 - x2
  const int bound = 6;
  const PbwElement series = ast_series_product(2, positive_roots(2), RootDatum(2).rho(), bound);
  const RatFunc H = x(1) - x(2);
  const Root a{1, 2};
  RatFunc c(1);
  PbwElement rebuilt(2);
  std::map<PbwKey, RatFunc> want;
  for (int k = 0; k <= bound; ++k) {
    if (k > 0) c = c * RatFunc(Rational(-1, k)) / (H + RatFunc(1 + k));
    want[PbwKey{MultiIndex{k}, MultiIndex{k}}] = c;
    rebuilt += PbwElement::root_vector(2, 'F', a, k) * PbwElement::root_vector(2, 'E', a, k) * PbwElement::scalar(2, c);
  }
  CHECK(right_form(series) == want);
  CHECK(series == rebuilt);
  // E^k h(H) = h(H - 2k) E^k, so the middle coefficient is the right one shifted down.
  for (const auto& [key, h] : series.terms()) {
    const int k = key.e[0];
    CHECK(h == want.at(key).shift(Weight{-k, k}));
  }
}

TEST_CASE("truncated series are stable under wider truncation") {
  for (int n = 2; n <= 3; ++n) {
    const int bound = n == 2 ? 5 : 3;
    const auto order = positive_roots(n);
    const Weight rho = RootDatum(n).rho();
    const PbwElement narrow = ast_series_product(n, order, rho, bound);
    const PbwElement wide = ast_series_product(n, order, rho, 2 * bound);
    CHECK(truncate_height(wide, bound) == narrow);
  }
  CHECK_THROWS_AS(ast_series_product(3, {{1, 3}, {1, 2}, {2, 3}}, RootDatum(3).rho(), 2), Error);
}
