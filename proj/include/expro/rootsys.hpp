#pragma once

// Type A root data in gl_n coordinates: positive roots, weights, Weyl group
// words, normal orders and subalgebra specifications l_{i1...ir}.

#include <string>
#include <string_view>
#include <vector>

#include "expro/ratfunc.hpp"

namespace expro {

// Positive root alpha_ij = e_i - e_j, 1-based with i < j.
struct Root {
  int i = 0;
  int j = 0;

  int height() const { return j - i; }
  std::string name() const;  // "a12"
  friend auto operator<=>(const Root&, const Root&) = default;
};

using Weight = std::vector<Rational>;  // epsilon coordinates, length n
using Word = std::vector<int>;         // simple reflection indices, 1-based
using MultiIndex = std::vector<int>;   // exponent per positive root, reference order

Weight root_weight(const Root& r, int n);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(const Rational& c, const Weight& a);
// mu(H_ij) = mu_i - mu_j.
Rational pair_with_coroot(const Weight& mu, const Root& r);
std::string weight_to_string(const Weight& w);
Weight parse_weight(std::string_view text);

class RootDatum {
 public:
  explicit RootDatum(int n);

  int rank() const { return n_; }  // gl_n size
  const std::vector<Root>& positive_roots() const { return roots_; }
  std::vector<Root> simple_roots() const;
  const Weight& rho() const { return rho_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  // Position of a root in the reference (lexicographic) order.
  int index_of(const Root& r) const;

 private:
  int n_;
  std::vector<Root> roots_;
  Weight rho_;
};

std::vector<Root> positive_roots(int n);

// |K| = sum_r K_r alpha_r and its height.
Weight index_weight(const MultiIndex& k, int n);
int index_height(const MultiIndex& k, int n);
// Simple-root coordinates of |K|, length n-1.
std::vector<int> index_simple_coords(const MultiIndex& k, int n);
// "F12^2*F23", or "1" for the empty index.
std::string monomial_string(char letter, const MultiIndex& k, int n);
MultiIndex unit_index(int r, int n);
std::vector<Word> reduced_words_of_w0(int n);
std::vector<Root> normal_order_from_word(const Word& word, int n);
bool is_normal_order(const std::vector<Root>& order, int n);
Word word_from_normal_order(const std::vector<Root>& order, int n);
std::string word_to_string(const Word& w);

Permutation identity_permutation(int n);
Permutation compose(const Permutation& v, const Permutation& w);  // v o w
Permutation simple_reflection(int k, int n);                       // swaps k, k+1 (1-based)
Permutation reflection(const Root& r, int n);
Permutation inverse(const Permutation& w);
std::vector<Permutation> all_permutations(int n);
// (w mu)_{w(i)} = mu_i.
Weight act(const Permutation& w, const Weight& mu);
// w . mu = w(mu + rho) - rho.
Weight dot_action(const Permutation& w, const Weight& mu);

// A reductive subalgebra l_{i...,j...} containing h: disjoint sorted blocks.
class SubalgebraSpec {
 public:
  SubalgebraSpec() = default;
  SubalgebraSpec(int n, std::vector<std::vector<int>> blocks);

  // "h", "12", "l12", "12,45", "l124", "g" (whole algebra).
  static SubalgebraSpec parse(std::string_view text, int n);
  static SubalgebraSpec cartan(int n) { return SubalgebraSpec(n, {}); }
  static SubalgebraSpec whole(int n);

  int rank() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  bool is_cartan() const { return blocks_.empty(); }
  bool is_standard() const;
  bool is_whole() const;
  bool contains_root(const Root& r) const;
  bool contains(const SubalgebraSpec& other) const;
  std::vector<Root> positive_roots() const;
  // Roots of g not in this subalgebra (the u+ roots for a Levi subalgebra).
  std::vector<Root> complement_roots() const;
  int block_of(int index) const;  // -1 when not in any block
  // Union of blocks, merging overlapping blocks.
  SubalgebraSpec merged_with(const SubalgebraSpec& other) const;
  // Generators (adjacent transpositions within each block) of W(l).
  std::vector<Permutation> weyl_generators() const;
  std::string name() const;

  friend bool operator==(const SubalgebraSpec&, const SubalgebraSpec&) = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

// T in z+(l): T centralizes l and alpha(T) > 0 on u+.
bool in_z_plus(const Weight& t, const SubalgebraSpec& l);

}  // namespace expro
