#include "expro/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "expro/error.hpp"

namespace expro {

std::string Root::name() const { return "a" + std::to_string(i) + std::to_string(j); }

Weight root_weight(const Root& r, int n) {
  Weight w(n);
  w[r.i - 1] = 1;
  w[r.j - 1] = -1;
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = (i < a.size() ? a[i] : Rational(0)) + (i < b.size() ? b[i] : Rational(0));
  return r;
}

Weight operator-(const Weight& a, const Weight& b) { return a + Rational(-1) * b; }

Weight operator*(const Rational& c, const Weight& a) {
  Weight r = a;
  for (auto& x : r) x *= c;
  return r;
}

Rational pair_with_coroot(const Weight& mu, const Root& r) { return mu[r.i - 1] - mu[r.j - 1]; }

std::string weight_to_string(const Weight& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += rational_to_string(w[i]);
  }
  return out;
}

Weight parse_weight(std::string_view text) {
  Weight w;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw Error(ErrorCode::kParse, "empty weight coordinate");
    try {
      Rational q(item);
      q.canonicalize();
      w.push_back(q);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kParse, "bad weight coordinate '" + item + "'");
    }
  }
  return w;
}

RootDatum::RootDatum(int n) : n_(n), roots_(expro::positive_roots(n)), rho_(n) {
  for (int i = 0; i < n; ++i) rho_[i] = n - 1 - i;
}

std::vector<Root> RootDatum::simple_roots() const {
  std::vector<Root> s;
  for (int i = 1; i < n_; ++i) s.push_back({i, i + 1});
  return s;
}

int RootDatum::index_of(const Root& r) const {
  auto it = std::lower_bound(roots_.begin(), roots_.end(), r);
  if (it == roots_.end() || *it != r)
    throw Error(ErrorCode::kInvalidArgument, "not a positive root: " + r.name());
  return static_cast<int>(it - roots_.begin());
}

std::vector<Root> positive_roots(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidRank, "rank must be at least 2, got " + std::to_string(n));
  if (n > kMaxVars) throw Error(ErrorCode::kInvalidRank, "rank exceeds supported maximum");
  std::vector<Root> roots;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) roots.push_back({i, j});
  return roots;
}

Weight index_weight(const MultiIndex& k, int n) {
  Weight w(n);
  const auto roots = positive_roots(n);
  for (std::size_t r = 0; r < k.size(); ++r) {
    if (!k[r]) continue;
    w[roots[r].i - 1] += k[r];
    w[roots[r].j - 1] -= k[r];
  }
  return w;
}

int index_height(const MultiIndex& k, int n) {
  int h = 0;
  const auto roots = positive_roots(n);
  for (std::size_t r = 0; r < k.size(); ++r) h += k[r] * roots[r].height();
  return h;
}

std::vector<int> index_simple_coords(const MultiIndex& k, int n) {
  std::vector<int> c(n - 1, 0);
  const auto roots = positive_roots(n);
  for (std::size_t r = 0; r < k.size(); ++r)
    for (int s = roots[r].i; s < roots[r].j; ++s) c[s - 1] += k[r];
  return c;
}

std::string monomial_string(char letter, const MultiIndex& k, int n) {
  const auto roots = positive_roots(n);
  std::string out;
  for (std::size_t r = 0; r < k.size(); ++r) {
    if (!k[r]) continue;
    if (!out.empty()) out += "*";
    out += letter + std::to_string(roots[r].i) + std::to_string(roots[r].j);
    if (k[r] > 1) out += "^" + std::to_string(k[r]);
  }
  return out.empty() ? "1" : out;
}

MultiIndex unit_index(int r, int n) {
  MultiIndex k(n * (n - 1) / 2, 0);
  k[r] = 1;
  return k;
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& v, const Permutation& w) {
  Permutation r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = v[w[i]];
  return r;
}

Permutation simple_reflection(int k, int n) {
  Permutation p = identity_permutation(n);
  std::swap(p[k - 1], p[k]);
  return p;
}

Permutation reflection(const Root& r, int n) {
  Permutation p = identity_permutation(n);
  std::swap(p[r.i - 1], p[r.j - 1]);
  return p;
}

Permutation inverse(const Permutation& w) {
  Permutation r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[w[i]] = static_cast<int>(i);
  return r;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Weight act(const Permutation& w, const Weight& mu) {
  Weight r(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) r[w[i]] = mu[i];
  return r;
}

Weight dot_action(const Permutation& w, const Weight& mu) {
  RootDatum d(static_cast<int>(mu.size()));
  return act(w, mu + d.rho()) - d.rho();
}

std::vector<Word> reduced_words_of_w0(int n) {
  positive_roots(n);  // validates n
  const int m = n * (n - 1) / 2;
  std::vector<Word> words;
  Word current;
  std::function<void(const Permutation&)> extend = [&](const Permutation& w) {
    if (static_cast<int>(current.size()) == m) {
      words.push_back(current);
      return;
    }
    for (int k = 1; k < n; ++k) {
      // l(w s_k) > l(w) iff w(k) < w(k+1).
      if (w[k - 1] < w[k]) {
        current.push_back(k);
        extend(compose(w, simple_reflection(k, n)));
        current.pop_back();
      }
    }
  };
  extend(identity_permutation(n));
  return words;
}

namespace {

// Image of a root under w, as a (possibly negative) root (i, j).
std::pair<int, int> act_on_root(const Permutation& w, const Root& r) {
  return {w[r.i - 1] + 1, w[r.j - 1] + 1};
}

}  // namespace

std::vector<Root> normal_order_from_word(const Word& word, int n) {
  const int m = n * (n - 1) / 2;
  if (static_cast<int>(word.size()) != m)
    throw Error(ErrorCode::kNotReduced, "word length differs from the length of w0");
  std::vector<Root> order;
  Permutation prefix = identity_permutation(n);
  for (int k : word) {
    if (k < 1 || k >= n) throw Error(ErrorCode::kNotReduced, "simple reflection index out of range");
    auto [a, b] = act_on_root(prefix, Root{k, k + 1});
    if (a > b) throw Error(ErrorCode::kNotReduced, "word " + word_to_string(word) + " is not reduced");
    order.push_back({a, b});
    prefix = compose(prefix, simple_reflection(k, n));
  }
  return order;
}

namespace {

void check_permutation_of_roots(const std::vector<Root>& order, int n) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != positive_roots(n))
    throw Error(ErrorCode::kInvalidOrder, "not a permutation of the positive roots");
}

}  // namespace

bool is_normal_order(const std::vector<Root>& order, int n) {
  check_permutation_of_roots(order, n);
  std::vector<std::vector<int>> pos(n + 1, std::vector<int>(n + 1, -1));
  for (std::size_t t = 0; t < order.size(); ++t) pos[order[t].i][order[t].j] = static_cast<int>(t);
  // alpha_ij + alpha_jk = alpha_ik.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        int r = pos[i][j], s = pos[j][k], t = pos[i][k];
        if (!((r < t && t < s) || (s < t && t < r))) return false;
      }
  return true;
}

Word word_from_normal_order(const std::vector<Root>& order, int n) {
  if (!is_normal_order(order, n)) throw Error(ErrorCode::kInvalidOrder, "order is not normal");
  Word word;
  Permutation prefix = identity_permutation(n);
  for (const Root& r : order) {
    auto [a, b] = act_on_root(prefix, r);
    if (b != a + 1) throw Error(ErrorCode::kInternal, "normal order produced a non-simple root");
    word.push_back(a);
    prefix = compose(prefix, reflection(r, n));
  }
  return word;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += "s" + std::to_string(w[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

SubalgebraSpec::SubalgebraSpec(int n, std::vector<std::vector<int>> blocks) : n_(n) {
  std::vector<bool> used(n + 1, false);
  for (auto& b : blocks) {
    if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
      throw Error(ErrorCode::kInvalidArgument, "subalgebra block must be strictly increasing");
    for (int i : b) {
      if (i < 1 || i > n) throw Error(ErrorCode::kInvalidArgument, "block index out of range");
      if (used[i]) throw Error(ErrorCode::kInvalidArgument, "subalgebra blocks must be disjoint");
      used[i] = true;
    }
    if (b.size() >= 2) blocks_.push_back(std::move(b));
  }
  std::sort(blocks_.begin(), blocks_.end());
}

SubalgebraSpec SubalgebraSpec::parse(std::string_view text, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "h") return cartan(n);
  if (s == "g") return whole(n);
  if (s[0] == 'l') s = s.substr(1);
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<int> b;
    for (char c : item) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::kParse, "bad subalgebra spec '" + std::string(text) + "'");
      b.push_back(c - '0');
    }
    blocks.push_back(std::move(b));
  }
  return SubalgebraSpec(n, std::move(blocks));
}

SubalgebraSpec SubalgebraSpec::whole(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return SubalgebraSpec(n, {all});
}

bool SubalgebraSpec::is_standard() const {
  for (const auto& b : blocks_)
    if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
  return true;
}

bool SubalgebraSpec::is_whole() const {
  return blocks_.size() == 1 && static_cast<int>(blocks_[0].size()) == n_;
}

int SubalgebraSpec::block_of(int index) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), index)) return static_cast<int>(b);
  return -1;
}

bool SubalgebraSpec::contains_root(const Root& r) const {
  int b = block_of(r.i);
  return b >= 0 && b == block_of(r.j);
}

bool SubalgebraSpec::contains(const SubalgebraSpec& other) const {
  for (const Root& r : other.positive_roots())
    if (!contains_root(r)) return false;
  return true;
}

std::vector<Root> SubalgebraSpec::positive_roots() const {
  std::vector<Root> out;
  for (const Root& r : expro::positive_roots(n_))
    if (contains_root(r)) out.push_back(r);
  return out;
}

std::vector<Root> SubalgebraSpec::complement_roots() const {
  std::vector<Root> out;
  for (const Root& r : expro::positive_roots(n_))
    if (!contains_root(r)) out.push_back(r);
  return out;
}

SubalgebraSpec SubalgebraSpec::merged_with(const SubalgebraSpec& other) const {
  // Union-find over indices.
  std::vector<int> parent(n_ + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto* spec : {this, &other})
    for (const auto& b : spec->blocks_)
      for (std::size_t k = 1; k < b.size(); ++k) parent[find(b[k])] = find(b[0]);
  std::vector<std::vector<int>> groups(n_ + 1);
  for (int i = 1; i <= n_; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& g : groups)
    if (g.size() >= 2) blocks.push_back(g);
  return SubalgebraSpec(n_, blocks);
}

std::vector<Permutation> SubalgebraSpec::weyl_generators() const {
  std::vector<Permutation> gens;
  for (const auto& b : blocks_)
    for (std::size_t k = 0; k + 1 < b.size(); ++k) gens.push_back(reflection(Root{b[k], b[k + 1]}, n_));
  return gens;
}

std::string SubalgebraSpec::name() const {
  if (blocks_.empty()) return "h";
  std::string out = "l";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += ",";
    for (int i : blocks_[b]) out += std::to_string(i);
  }
  return out;
}

bool in_z_plus(const Weight& t, const SubalgebraSpec& l) {
  for (const Root& r : l.positive_roots())
    if (pair_with_coroot(t, r) != 0)
      throw Error(ErrorCode::kNotCentral, "T is not central in " + l.name());
  for (const Root& r : l.complement_roots())
    if (pair_with_coroot(t, r) <= 0) return false;
  return true;
}

}  // namespace expro
