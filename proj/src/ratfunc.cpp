#include "expro/ratfunc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "expro/error.hpp"

namespace expro {

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = a.exp[i] + b.exp[i];
    if (e > 255) throw Error(ErrorCode::kInternal, "monomial exponent overflow");
    m.exp[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint8_t>(a.exp[i] - b.exp[i]);
  return m;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(int index) {
  if (index < 0 || index >= kMaxVars)
    throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  Poly p;
  Monomial m;
  m.exp[index] = 1;
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.degree() == 0 && terms_[0].coeff == 1;
}

const Rational& Poly::constant_term() const {
  static const Rational kZero(0);
  if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coeff;
  return kZero;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, int(t.mono.exp[var]));
  return d;
}

int Poly::num_vars() const {
  int n = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i]) n = std::max(n, i + 1);
  return n;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two grlex-sorted term lists with coefficient sign for b.
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, bool negate_b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.is_constant()) return a * b.terms_[0].coeff;
  if (a.is_constant()) return b * a.terms_[0].coeff;
  std::vector<Poly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Poly::from_terms(std::move(prod));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Poly Poly::pow(int e) const {
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& b) const {
  if (b.is_zero()) throw Error(ErrorCode::kZeroDivisor, "polynomial division by zero");
  if (b.is_constant()) {
    Poly q = *this;
    q *= Rational(1) / b.terms_[0].coeff;
    return q;
  }
  std::vector<Term> quotient;
  Poly r = *this;
  const Term& lb = b.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Term t{lr.mono / lb.mono, lr.coeff / lb.coeff};
    Poly tp;
    tp.terms_.push_back(t);
    r -= tp * b;
    quotient.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(quotient));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  r *= Rational(1) / terms_.front().coeff;
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      for (int k = 0; k < t.mono.exp[i]; ++k) {
        if (i >= static_cast<int>(point.size()))
          throw Error(ErrorCode::kInvalidArgument, "evaluation point has too few coordinates");
        v *= point[i];
      }
    }
    sum += v;
  }
  return sum;
}

Poly Poly::substitute_affine(std::span<const int> perm,
                             std::span<const Rational> offset) const {
  const int nsub = static_cast<int>(perm.size());
  std::vector<std::vector<Poly>> powers(nsub);
  for (int i = 0; i < nsub; ++i) {
    int maxdeg = degree_in(i);
    Poly lin = Poly::variable(perm[i]) + Poly(offset[i]);
    powers[i].push_back(Poly(1));
    for (int k = 1; k <= maxdeg; ++k) powers[i].push_back(powers[i].back() * lin);
  }
  Poly result;
  std::vector<Term> collected;
  for (const auto& t : terms_) {
    Monomial rest = t.mono;
    for (int i = 0; i < nsub; ++i) rest.exp[i] = 0;
    Poly term;
    term.terms_.push_back({rest, t.coeff});
    for (int i = 0; i < nsub; ++i)
      if (t.mono.exp[i]) term = term * powers[i][t.mono.exp[i]];
    for (auto& x : term.terms_) collected.push_back(std::move(x));
  }
  return Poly::from_terms(std::move(collected));
}

Poly Poly::shift(std::span<const Rational> nu) const {
  std::vector<int> perm(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) perm[i] = static_cast<int>(i);
  return substitute_affine(perm, nu);
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  std::vector<Poly> coeffs(degree_in(var) + 1);
  std::vector<std::vector<Term>> parts(coeffs.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    int e = m.exp[var];
    m.exp[var] = 0;
    parts[e].push_back({m, t.coeff});
  }
  for (std::size_t e = 0; e < coeffs.size(); ++e) coeffs[e] = Poly::from_terms(std::move(parts[e]));
  return coeffs;
}

Poly Poly::from_coefficients_in(int var, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t e = 0; e < coeffs.size(); ++e)
    for (const auto& t : coeffs[e].terms_) {
      Monomial m = t.mono;
      m.exp[var] = static_cast<std::uint8_t>(e);
      all.push_back({m, t.coeff});
    }
  return Poly::from_terms(std::move(all));
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!t.mono.exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (t.mono.exp[i] > 1) mono += "^" + std::to_string(t.mono.exp[i]);
    }
    if (mono.empty()) {
      out += rational_to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += rational_to_string(c) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gcd: recursive content / primitive-part scheme with primitive PRS.

namespace {

int lowest_var_used(const Poly& a, const Poly& b) {
  for (int v = 0; v < kMaxVars; ++v)
    if (a.uses(v) || b.uses(v)) return v;
  return -1;
}

Poly content_in(const Poly& p, int var) {
  auto coeffs = p.coefficients_in(var);
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, int var) {
  Poly c = content_in(p, var);
  return p.divide_exact(c).value().monic();
}

// lc(b)^(deg a - deg b + 1) * a mod b in the given variable.
Poly pseudo_remainder(Poly a, const Poly& b, int var) {
  const int db = b.degree_in(var);
  const Poly lcb = b.coefficients_in(var).back();
  int da = a.degree_in(var);
  int steps = da - db + 1;
  while (!a.is_zero() && da >= db) {
    Poly lca = a.coefficients_in(var).back();
    Monomial shift;
    shift.exp[var] = static_cast<std::uint8_t>(da - db);
    Poly xs = Poly::from_terms({{shift, Rational(1)}});
    a = lcb * a - lca * xs * b;
    da = a.degree_in(var);
    --steps;
  }
  if (steps > 0 && !a.is_zero()) a = a * lcb.pow(steps);
  return a;
}

// Subresultant sequence for a and b primitive in var.
Poly primitive_gcd(Poly a, Poly b, int var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  Poly g(1), h(1);
  while (true) {
    const int d = a.degree_in(var) - b.degree_in(var);
    Poly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return primitive_in(b, var);
    if (r.degree_in(var) == 0) return Poly(1);
    a = std::move(b);
    b = r.divide_exact(g * h.pow(d)).value();
    g = a.coefficients_in(var).back();
    if (d == 0) continue;
    h = d == 1 ? g : g.pow(d).divide_exact(h.pow(d - 1)).value();
  }
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();
  int v = lowest_var_used(a, b);
  bool ua = a.uses(v), ub = b.uses(v);
  if (ua && !ub) return gcd(content_in(a, v), b);
  if (ub && !ua) return gcd(a, content_in(b, v));
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly pa = a.divide_exact(ca).value(), pb = b.divide_exact(cb).value();
  Poly g = primitive_gcd(pa.monic(), pb.monic(), v);
  if (g.degree_in(v) > 0) g = primitive_in(g, v);
  return (c * g).monic();
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::kZeroDivisor, "zero denominator");
  canonicalize();
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.divide_exact(g).value();
      den_ = den_.divide_exact(g).value();
    }
  }
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

int RatFunc::num_vars() const { return std::max(num_.num_vars(), den_.num_vars()); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly a = o.den_.divide_exact(g).value();
  Poly b = den_.divide_exact(g).value();
  num_ = num_ * a + o.num_ * b;
  den_ = den_ * a;
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n1 = num_.divide_exact(g1).value(), d2 = o.den_.divide_exact(g1).value();
  Poly n2 = o.num_.divide_exact(g2).value(), d1 = den_.divide_exact(g2).value();
  num_ = n1 * n2;
  den_ = d1 * d2;
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kZeroDivisor, "inverse of zero rational function");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  Rational lc = r.den_.leading().coeff;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

RatFunc RatFunc::shift(std::span<const Rational> nu) const {
  bool trivial = std::all_of(nu.begin(), nu.end(), [](const Rational& q) { return q == 0; });
  if (trivial || is_constant()) return *this;
  RatFunc r;
  r.num_ = num_.shift(nu);
  r.den_ = den_.shift(nu);
  // Affine substitutions preserve coprimality; only rescale.
  Rational lc = r.den_.leading().coeff;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

RatFunc RatFunc::substitute_affine(std::span<const int> perm,
                                   std::span<const Rational> offset) const {
  return RatFunc(num_.substitute_affine(perm, offset), den_.substitute_affine(perm, offset));
}

Rational RatFunc::eval(std::span<const Rational> point) const {
  Rational d = den_.eval(point);
  if (d == 0) throw Error(ErrorCode::kPoleAtPoint, "denominator vanishes at evaluation point");
  return num_.eval(point) / d;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string out = "(" + den_.to_string() + ")^-1";
  if (!num_.is_one()) out += " * (" + num_.to_string() + ")";
  return out;
}

RatFunc weyl_act(const Permutation& w, const RatFunc& h) {
  std::vector<Rational> zero(w.size());
  return h.substitute_affine(w, zero);
}

RatFunc dot_act(const Permutation& w, const RatFunc& h) {
  // (w.h)(x) = h(w^{-1}(x + rho) - rho); x_i -> x_{w(i)} + rho_{w(i)} - rho_i.
  const int n = static_cast<int>(w.size());
  std::vector<Rational> offset(n);
  for (int i = 0; i < n; ++i) offset[i] = Rational((n - 1 - w[i]) - (n - 1 - i));
  return h.substitute_affine(w, offset);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::kParse, why + " at position " + std::to_string(pos_) + " in '" +
                                       std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  RatFunc expr() {
    RatFunc r = term();
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    while (true) {
      if (accept('*')) r *= factor();
      else if (accept('/')) r /= factor();
      else return r;
    }
  }
  RatFunc factor() {
    if (accept('-')) return -factor();
    RatFunc base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      long e = integer();
      return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
    }
    return base;
  }
  RatFunc atom() {
    skip();
    if (accept('(')) {
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (accept('x')) {
      long idx = integer();
      if (idx < 1 || idx > kMaxVars) fail("variable index out of range");
      return RatFunc::variable(static_cast<int>(idx - 1));
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace expro
