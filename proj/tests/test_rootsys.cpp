#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "expro/error.hpp"
#include "expro/rootsys.hpp"

using namespace expro;

namespace {

// Words of length n(n-1)/2 whose product reverses 1..n, by brute force.
std::set<Word> brute_force_w0_words(int n) {
  const int len = n * (n - 1) / 2;
  std::set<Word> out;
  Word w(len, 1);
  for (;;) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int s : w) std::swap(p[s - 1], p[s]);
    bool reversed = true;
    for (int i = 0; i < n; ++i) reversed = reversed && p[i] == n - 1 - i;
    if (reversed) out.insert(w);
    int pos = len - 1;
    while (pos >= 0 && w[pos] == n - 1) w[pos--] = 1;
    if (pos < 0) break;
    ++w[pos];
  }
  return out;
}

// beta_k = s_{i1} ... s_{i(k-1)} alpha_{ik}, acting on the pair (i, j).
std::vector<Root> roots_along_word(const Word& w, int n) {
  std::vector<Root> out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    int a = w[k], b = w[k] + 1;
    for (std::size_t m = k; m-- > 0;) {
      auto s = [&](int x) { return x == w[m] ? x + 1 : x == w[m] + 1 ? x - 1 : x; };
      a = s(a);
      b = s(b);
    }
    out.push_back(a < b ? Root{a, b} : Root{b, a});
  }
  (void)n;
  return out;
}

// Direct check of the definition: alpha + beta lies between its summands.
bool normal_by_definition(const std::vector<Root>& order) {
  auto pos = [&](const Root& r) { return std::find(order.begin(), order.end(), r) - order.begin(); };
  for (const Root& a : order)
    for (const Root& b : order) {
      if (a.j != b.i) continue;
      const auto pa = pos(a), pb = pos(b), ps = pos(Root{a.i, b.j});
      if (!((pa < ps && ps < pb) || (pb < ps && ps < pa))) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("positive roots in lexicographic order and rho") {
  RootDatum d(4);
  CHECK(d.num_roots() == 6);
  CHECK(d.positive_roots().front() == Root{1, 2});
  CHECK(d.positive_roots().back() == Root{3, 4});
  CHECK(d.rho() == Weight{3, 2, 1, 0});
  CHECK(d.index_of(Root{2, 4}) == 4);
  CHECK(Root{1, 3}.name() == "a13");
  CHECK(Root{2, 5}.height() == 3);
  CHECK_THROWS_AS(RootDatum(1), Error);
}

TEST_CASE("reduced words of w0 match exhaustive search") {
  for (int n = 2; n <= 5; ++n) {
    const auto words = reduced_words_of_w0(n);
    const std::set<Word> got(words.begin(), words.end());
    CHECK(got.size() == words.size());
    CHECK(got == brute_force_w0_words(n));
  }
  CHECK(reduced_words_of_w0(3).size() == 2);
  CHECK(reduced_words_of_w0(4).size() == 16);
}

TEST_CASE("normal orders from words") {
  CHECK(normal_order_from_word({1, 2, 1}, 3) == std::vector<Root>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(normal_order_from_word({2, 1, 2}, 3) == std::vector<Root>{{2, 3}, {1, 3}, {1, 2}});
  for (int n = 3; n <= 5; ++n)
    for (const Word& w : reduced_words_of_w0(n)) {
      const auto order = normal_order_from_word(w, n);
      CHECK(order == roots_along_word(w, n));
      CHECK(is_normal_order(order, n));
      CHECK(word_from_normal_order(order, n) == w);
    }
}

TEST_CASE("normal orders of sl4 by brute force over all root permutations") {
  auto roots = positive_roots(4);
  std::sort(roots.begin(), roots.end());
  int by_definition = 0, by_library = 0;
  do {
    by_definition += normal_by_definition(roots);
    by_library += is_normal_order(roots, 4);
  } while (std::next_permutation(roots.begin(), roots.end()));
  CHECK(by_definition == 16);
  CHECK(by_library == 16);
  CHECK_FALSE(is_normal_order({{1, 3}, {1, 2}, {2, 3}}, 3));
  CHECK_THROWS_AS(word_from_normal_order({{1, 3}, {1, 2}, {2, 3}}, 3), Error);
}

TEST_CASE("Weyl group actions") {
  CHECK(all_permutations(4).size() == 24);
  const auto s1 = simple_reflection(1, 2);
  CHECK(dot_action(s1, Weight{0, 0}) == Weight{-1, 1});
  const auto s2 = simple_reflection(2, 3);
  // rho-shifted action fixes -rho
  CHECK(dot_action(s2, Weight{-2, -1, 0}) == Weight{-2, -1, 0});
  const Weight mu{5, Rational(1, 2), -3};
  for (const auto& w : all_permutations(3)) {
    CHECK(act(inverse(w), act(w, mu)) == mu);
    CHECK(dot_action(inverse(w), dot_action(w, mu)) == mu);
  }
  CHECK(reflection(Root{1, 3}, 3) == compose(simple_reflection(1, 3), compose(simple_reflection(2, 3), simple_reflection(1, 3))));
}

TEST_CASE("index weights and monomials") {
  MultiIndex k(3, 0);
  k[0] = 2;  // F12^2
  k[1] = 1;  // F13
  CHECK(index_weight(k, 3) == Weight{3, -2, -1});
  CHECK(index_height(k, 3) == 4);
  CHECK(index_simple_coords(k, 3) == std::vector<int>{3, 1});
  CHECK(monomial_string('F', k, 3) == "F12^2*F13");
  CHECK(monomial_string('E', MultiIndex(3, 0), 3) == "1");
  CHECK(pair_with_coroot(Weight{3, -2, -1}, Root{1, 3}) == 4);
  CHECK(parse_weight("1,1/2,-3") == Weight{1, Rational(1, 2), -3});
}

TEST_CASE("subalgebra specifications") {
  const auto l12 = SubalgebraSpec::parse("12", 4);
  CHECK(l12.is_standard());
  CHECK(l12.positive_roots() == std::vector<Root>{{1, 2}});
  CHECK(l12.complement_roots().size() == 5);
  const auto l13 = SubalgebraSpec::parse("l13", 3);
  CHECK_FALSE(l13.is_standard());
  CHECK(l13.contains_root(Root{1, 3}));
  CHECK_FALSE(l13.contains_root(Root{1, 2}));
  const auto l1245 = SubalgebraSpec::parse("12,45", 5);
  CHECK(l1245.blocks().size() == 2);
  CHECK(l1245.block_of(4) == 1);
  CHECK(l1245.block_of(3) == -1);
  CHECK(SubalgebraSpec::parse("g", 3).is_whole());
  CHECK(SubalgebraSpec::parse("h", 3).is_cartan());
  CHECK(SubalgebraSpec::parse("123", 4).contains(l12));
  CHECK_THROWS_AS(SubalgebraSpec::parse("15", 4), Error);
}

TEST_CASE("z+ membership checks alpha(T) on the nilradical directly") {
  const auto l12 = SubalgebraSpec::parse("12", 4);
  const Weight t{1, 1, -1, -1};
  bool direct = true;
  for (const Root& r : l12.complement_roots()) direct = direct && pair_with_coroot(t, r) > 0;
  CHECK_FALSE(direct);  // a34 pairs to 0
  CHECK(in_z_plus(t, l12) == direct);
  const auto l12_34 = SubalgebraSpec::parse("12,34", 4);
  CHECK(in_z_plus(t, l12_34));
  CHECK(in_z_plus(Weight{1, 1, -2}, SubalgebraSpec::parse("12", 3)));
  CHECK(in_z_plus(Weight{2, -1, -1}, SubalgebraSpec::parse("23", 3)));
  CHECK_FALSE(in_z_plus(Weight{0, 0, 0}, SubalgebraSpec::parse("23", 3)));
  CHECK_THROWS_AS(in_z_plus(Weight{1, 0, -1}, SubalgebraSpec::parse("12", 3)), Error);
}

TEST_CASE("dot action is a group action") {
  const Weight mu{Rational(7, 3), -2, 0, 5};
  const auto perms = all_permutations(4);
  for (const auto& v : perms)
    for (const auto& w : perms) CHECK(dot_action(compose(v, w), mu) == dot_action(v, dot_action(w, mu)));
  // (mu + rho)(H_a) = -i gives s_a . mu - mu = i a
  const Weight nu{-4, 0, 0};  // (nu + rho)(H_13) = -4 + 2 = -2
  CHECK(dot_action(reflection(Root{1, 3}, 3), nu) - nu == Rational(2) * root_weight(Root{1, 3}, 3));
}
