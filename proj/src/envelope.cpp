#include "expro/envelope.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>

#include "expro/error.hpp"

namespace expro {

namespace {

using Gen = std::pair<int, int>;  // e_ab, 1-based

// [e_ab, e_cd] = d_bc e_ad - d_da e_cb
std::vector<std::pair<Rational, Gen>> bracket(Gen x, Gen y) {
  std::vector<std::pair<Rational, Gen>> out;
  if (x.second == y.first) out.push_back({Rational(1), {x.first, y.second}});
  if (y.second == x.first) out.push_back({Rational(-1), {y.first, x.second}});
  return out;
}

int first_index(const MultiIndex& k) {
  for (std::size_t r = 0; r < k.size(); ++r)
    if (k[r]) return static_cast<int>(r);
  return -1;
}

bool is_empty(const MultiIndex& k) { return first_index(k) < 0; }

class Engine {
 public:
  explicit Engine(int n) : n_(n), roots_(positive_roots(n)), m_(static_cast<int>(roots_.size())) {
    idx_.assign(n + 1, std::vector<int>(n + 1, -1));
    for (int r = 0; r < m_; ++r) idx_[roots_[r].i][roots_[r].j] = r;
  }

  static Engine& get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Engine>> engines;
    std::lock_guard<std::mutex> lock(mu);
    auto& e = engines[n];
    if (!e) e = std::make_unique<Engine>(n);
    return *e;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  MultiIndex zero() const { return MultiIndex(m_, 0); }
  Gen e_gen(int r) const { return {roots_[r].i, roots_[r].j}; }
  Gen f_gen(int r) const { return {roots_[r].j, roots_[r].i}; }

  Weight weight(const MultiIndex& k) const {
    Weight w(n_);
    for (int r = 0; r < m_; ++r) {
      if (!k[r]) continue;
      w[roots_[r].i - 1] += k[r];
      w[roots_[r].j - 1] -= k[r];
    }
    return w;
  }

  Weight neg_weight(const MultiIndex& k) const { return Rational(-1) * weight(k); }

  // e_ab * F^K in normal form.
  const PbwElement& gen_times_f(Gen g, const MultiIndex& k) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = gen_memo_.find({g, k});
      if (it != gen_memo_.end()) return it->second;
    }
    PbwElement res = compute_gen_times_f(g, k);
    std::lock_guard<std::mutex> lock(mu_);
    return gen_memo_.emplace(std::make_pair(g, k), std::move(res)).first->second;
  }

  // E_s * E^L in normal form (constant coefficients).
  const std::map<MultiIndex, Rational>& e_gen_times_e(int s, const MultiIndex& l) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = e_memo_.find({s, l});
      if (it != e_memo_.end()) return it->second;
    }
    std::map<MultiIndex, Rational> res;
    int f = first_index(l);
    if (f < 0 || s <= f) {
      MultiIndex l2 = l;
      ++l2[s];
      res[l2] = 1;
    } else {
      MultiIndex l1 = l;
      --l1[f];
      auto inner = e_gen_times_e(s, l1);
      for (const auto& [mono, c] : inner)
        for (const auto& [mono2, c2] : e_gen_times_e(f, mono)) accumulate(res, mono2, c * c2);
      for (const auto& [c, h] : bracket(e_gen(s), e_gen(f))) {
        int t = idx_[h.first][h.second];
        for (const auto& [mono2, c2] : e_gen_times_e(t, l1)) accumulate(res, mono2, c * c2);
      }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return e_memo_.emplace(std::make_pair(s, l), std::move(res)).first->second;
  }

  std::map<MultiIndex, Rational> e_times_e(const MultiIndex& left, const MultiIndex& right) {
    std::map<MultiIndex, Rational> cur{{right, Rational(1)}};
    for (int r = m_ - 1; r >= 0; --r) {
      for (int p = 0; p < left[r]; ++p) {
        std::map<MultiIndex, Rational> next;
        for (const auto& [mono, c] : cur)
          for (const auto& [mono2, c2] : e_gen_times_e(r, mono)) accumulate(next, mono2, c * c2);
        cur = std::move(next);
      }
    }
    return cur;
  }

  // g * X for a normal-form X.
  PbwElement left_gen(Gen g, const PbwElement& x) {
    PbwElement out(n_);
    for (const auto& [key, h] : x.terms()) {
      const PbwElement& y = gen_times_f(g, key.f);
      for (const auto& [key2, g2] : y.terms()) {
        RatFunc coeff = g2 * h.shift(neg_weight(key2.e));
        if (is_empty(key2.e)) {
          out.add_term(key2.f, coeff, key.e);
        } else {
          for (const auto& [mono, c] : e_times_e(key2.e, key.e)) out.add_term(key2.f, coeff * RatFunc(c), mono);
        }
      }
    }
    return out;
  }

  PbwElement multiply(const PbwElement& a, const PbwElement& b) {
    PbwElement out(n_);
    for (const auto& [ka, ha] : a.terms()) {
      for (const auto& [kb, hb] : b.terms()) {
        PbwElement x = PbwElement::monomial(n_, kb.f, hb, kb.e);
        for (int r = m_ - 1; r >= 0; --r)
          for (int p = 0; p < ka.e[r]; ++p) x = left_gen(e_gen(r), x);
        PbwElement y(n_);
        for (const auto& [key, g] : x.terms()) y.add_term(key.f, ha.shift(neg_weight(key.f)) * g, key.e);
        for (int r = m_ - 1; r >= 0; --r)
          for (int p = 0; p < ka.f[r]; ++p) y = left_gen(f_gen(r), y);
        out += y;
      }
    }
    return out;
  }

  const VermaTerms& verma_action(Gen g, const MultiIndex& k) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = verma_memo_.find({g, k});
      if (it != verma_memo_.end()) return it->second;
    }
    VermaTerms res;
    for (const auto& [key, h] : gen_times_f(g, k).terms())
      if (is_empty(key.e)) res.emplace(key.f, h);
    std::lock_guard<std::mutex> lock(mu_);
    return verma_memo_.emplace(std::make_pair(g, k), std::move(res)).first->second;
  }

 private:
  static void accumulate(std::map<MultiIndex, Rational>& m, const MultiIndex& k, const Rational& c) {
    auto [it, inserted] = m.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
  }

  PbwElement compute_gen_times_f(Gen g, const MultiIndex& k) {
    auto [a, b] = g;
    PbwElement res(n_);
    if (a == b) {
      RatFunc coeff = RatFunc::variable(a - 1) - RatFunc(weight(k)[a - 1]);
      res.add_term(k, coeff, zero());
      return res;
    }
    int f = first_index(k);
    if (a > b) {
      int s = idx_[b][a];
      if (f < 0 || s <= f) {
        MultiIndex k2 = k;
        ++k2[s];
        res.add_term(k2, RatFunc(1), zero());
        return res;
      }
    } else if (f < 0) {
      res.add_term(zero(), RatFunc(1), unit_index(idx_[a][b], n_));
      return res;
    }
    // g F_f F^{k1} = F_f (g F^{k1}) + [g, F_f] F^{k1}
    MultiIndex k1 = k;
    --k1[f];
    res += left_gen(f_gen(f), gen_times_f(g, k1));
    for (const auto& [c, h] : bracket(g, f_gen(f))) {
      PbwElement t = gen_times_f(h, k1);
      for (const auto& [key, coeff] : t.terms()) res.add_term(key.f, coeff * RatFunc(c), key.e);
    }
    return res;
  }

  int n_;
  std::vector<Root> roots_;
  int m_;
  std::vector<std::vector<int>> idx_;
  std::mutex mu_;
  std::map<std::pair<Gen, MultiIndex>, PbwElement> gen_memo_;
  std::map<std::pair<int, MultiIndex>, std::map<MultiIndex, Rational>> e_memo_;
  std::map<std::pair<Gen, MultiIndex>, VermaTerms> verma_memo_;
};

}  // namespace

PbwElement::PbwElement(int n) : n_(n) {}

PbwElement PbwElement::scalar(int n, const RatFunc& h) {
  MultiIndex z(n * (n - 1) / 2, 0);
  return monomial(n, z, h, z);
}

PbwElement PbwElement::monomial(int n, const MultiIndex& f, const RatFunc& h, const MultiIndex& e) {
  PbwElement x(n);
  x.add_term(f, h, e);
  return x;
}

PbwElement PbwElement::root_vector(int n, char letter, const Root& r, int power) {
  MultiIndex z(n * (n - 1) / 2, 0);
  MultiIndex k = z;
  k[RootDatum(n).index_of(r)] = power;
  if (letter == 'F') return monomial(n, k, RatFunc(1), z);
  if (letter == 'E') return monomial(n, z, RatFunc(1), k);
  throw Error(ErrorCode::kInvalidArgument, "root vector letter must be E or F");
}

PbwElement PbwElement::gl_basis(int n, int a, int b) {
  if (a < 1 || b < 1 || a > n || b > n) throw Error(ErrorCode::kInvalidArgument, "gl index out of range");
  if (a == b) return scalar(n, RatFunc::variable(a - 1));
  if (a < b) return root_vector(n, 'E', Root{a, b});
  return root_vector(n, 'F', Root{b, a});
}

void PbwElement::add_term(const MultiIndex& f, const RatFunc& h, const MultiIndex& e) {
  if (h.is_zero()) return;
  auto [it, inserted] = terms_.emplace(PbwKey{f, e}, h);
  if (!inserted) {
    it->second += h;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<Weight> PbwElement::ad_weight() const {
  if (terms_.empty()) return Weight(n_);
  std::optional<Weight> w;
  for (const auto& [key, h] : terms_) {
    Weight t = index_weight(key.e, n_) - index_weight(key.f, n_);
    if (!w) w = t;
    else if (*w != t) return std::nullopt;
  }
  return w;
}

PbwElement PbwElement::operator-() const {
  PbwElement out(n_);
  for (const auto& [key, h] : terms_) out.terms_.emplace(key, -h);
  return out;
}

PbwElement& PbwElement::operator+=(const PbwElement& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [key, h] : o.terms_) add_term(key.f, h, key.e);
  return *this;
}

PbwElement& PbwElement::operator-=(const PbwElement& o) { return *this += -o; }

PbwElement operator*(const PbwElement& a, const PbwElement& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::kInvalidArgument, "rank mismatch in product");
  return Engine::get(a.n_).multiply(a, b);
}

PbwElement operator*(const RatFunc& h, const PbwElement& a) {
  return PbwElement::scalar(a.rank(), h) * a;
}

PbwElement commutator(const PbwElement& a, const PbwElement& b) { return a * b - b * a; }

std::string PbwElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, h] : terms_) {
    std::vector<std::string> parts;
    if (!is_empty(key.f)) parts.push_back(monomial_string('F', key.f, n_));
    if (!h.is_one() || (is_empty(key.f) && is_empty(key.e))) parts.push_back("(" + h.to_string() + ")");
    if (!is_empty(key.e)) parts.push_back(monomial_string('E', key.e, n_));
    std::string term;
    for (std::size_t i = 0; i < parts.size(); ++i) term += (i ? " * " : "") + parts[i];
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

namespace {

class PbwParser {
 public:
  PbwParser(std::string_view text, int n) : s_(text), n_(n) {}

  PbwElement parse() {
    PbwElement x = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::kParse, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int integer() {
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }
  int digit() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected index digit");
    return s_[pos_++] - '0';
  }

  PbwElement expr() {
    bool neg = eat('-');
    PbwElement x = term();
    if (neg) x = -x;
    for (;;) {
      if (eat('+')) x += term();
      else if (eat('-')) x -= term();
      else return x;
    }
  }

  PbwElement term() {
    PbwElement x = factor();
    while (eat('*')) x = x * factor();
    return x;
  }

  PbwElement factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == 'E' || c == 'F' || c == 'H') {
      ++pos_;
      int i = digit(), j = digit();
      if (i >= j || j > n_) fail("bad root index");
      int power = eat('^') ? integer() : 1;
      if (c == 'H') {
        RatFunc h = RatFunc::variable(i - 1) - RatFunc::variable(j - 1);
        return PbwElement::scalar(n_, h.pow(power));
      }
      if (power < 0) fail("negative power of a root vector");
      return PbwElement::root_vector(n_, c, Root{i, j}, power);
    }
    if (c == '(') {
      int depth = 0;
      std::size_t start = pos_;
      for (; pos_ < s_.size(); ++pos_) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')' && --depth == 0) break;
      }
      if (depth != 0) fail("unbalanced parenthesis");
      RatFunc h = RatFunc::parse(s_.substr(start + 1, pos_ - start - 1));
      ++pos_;
      if (eat('^')) h = h.pow(integer());
      return PbwElement::scalar(n_, h);
    }
    if (c == 'x' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      RatFunc h = RatFunc::parse(s_.substr(start, pos_ - start));
      if (eat('^')) h = h.pow(integer());
      return PbwElement::scalar(n_, h);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

PbwElement PbwElement::parse(std::string_view text, int n) {
  positive_roots(n);
  return PbwParser(text, n).parse();
}

PbwElement star(const PbwElement& a) {
  const int n = a.rank();
  const auto roots = positive_roots(n);
  PbwElement out(n);
  for (const auto& [key, h] : a.terms()) {
    // (F^I h E^J)* = (E^J)* h (F^I)*, factors reversed.
    PbwElement x = PbwElement::scalar(n, RatFunc(1));
    for (int r = static_cast<int>(roots.size()) - 1; r >= 0; --r)
      if (key.e[r]) x = x * PbwElement::root_vector(n, 'F', roots[r], key.e[r]);
    x = x * PbwElement::scalar(n, h);
    for (int r = static_cast<int>(roots.size()) - 1; r >= 0; --r)
      if (key.f[r]) x = x * PbwElement::root_vector(n, 'E', roots[r], key.f[r]);
    out += x;
  }
  return out;
}

RatFunc hc_project(const PbwElement& a) {
  auto w = a.ad_weight();
  if (!w || std::any_of(w->begin(), w->end(), [](const Rational& q) { return q != 0; }))
    throw Error(ErrorCode::kNotWeightZero, "Harish-Chandra projection needs a weight-zero element");
  MultiIndex z(a.rank() * (a.rank() - 1) / 2, 0);
  auto it = a.terms().find(PbwKey{z, z});
  return it == a.terms().end() ? RatFunc(0) : it->second;
}

std::map<PbwKey, RatFunc> right_form(const PbwElement& a) {
  std::map<PbwKey, RatFunc> out;
  for (const auto& [k, h] : a.terms()) out[k] = h.shift(index_weight(k.e, a.rank()));
  return out;
}

PbwElement truncate_height(const PbwElement& a, int bound) {
  PbwElement out(a.rank());
  for (const auto& [k, h] : a.terms())
    if (index_height(k.f, a.rank()) <= bound && index_height(k.e, a.rank()) <= bound) out.add_term(k.f, h, k.e);
  return out;
}

CentralElement casimir_omega2(int n) {
  PbwElement omega(n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) omega += PbwElement::gl_basis(n, a, b) * PbwElement::gl_basis(n, b, a);
  return {omega, hc_project(omega)};
}

const VermaTerms& verma_generator_action(int n, int a, int b, const MultiIndex& k) {
  return Engine::get(n).verma_action({a, b}, k);
}

}  // namespace expro
