#pragma once

// Exact multivariate polynomials and rational functions over Q in the Cartan
// coordinates x1..xn. These model Frac U(h) for gl_n, where H_ij = x_i - x_j.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace expro {

using Rational = mpq_class;

inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};

  int degree() const;
  bool divides(const Monomial& other) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded-lexicographic order, x1 > x2 > ... within a degree.
bool grlex_greater(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);
Monomial operator/(const Monomial& a, const Monomial& b);

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(long c) : Poly(Rational(c)) {}

  static Poly variable(int index);  // 0-based index, x_{index+1}
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const Rational& constant_term() const;
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(int var) const;
  bool uses(int var) const { return degree_in(var) > 0; }
  // Highest variable index used plus one.
  int num_vars() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(int e) const;
  // Exact quotient if b divides *this, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& b) const;
  Poly monic() const;

  Rational eval(std::span<const Rational> point) const;
  // x_i -> x_{perm[i]} + offset[i] for every i < perm.size().
  Poly substitute_affine(std::span<const int> perm,
                         std::span<const Rational> offset) const;
  Poly shift(std::span<const Rational> nu) const;

  // Coefficients of the polynomial viewed as univariate in `var`.
  std::vector<Poly> coefficients_in(int var) const;
  static Poly from_coefficients_in(int var, const std::vector<Poly>& coeffs);

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;  // sorted by grlex descending, nonzero coeffs
};

// Monic greatest common divisor (1 when either side is a nonzero constant).
Poly gcd(const Poly& a, const Poly& b);

class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT: implicit from integer
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RatFunc(Poly num, Poly den);

  static RatFunc variable(int index) { return RatFunc(Poly::variable(index)); }
  static RatFunc parse(std::string_view text);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  int num_vars() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  // h^nu: x_i -> x_i + nu_i.
  RatFunc shift(std::span<const Rational> nu) const;
  RatFunc substitute_affine(std::span<const int> perm,
                            std::span<const Rational> offset) const;
  Rational eval(std::span<const Rational> point) const;

  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

// Permutations act on gl_n coordinates; perm[i] is the image of i (0-based).
using Permutation = std::vector<int>;

// (w h)(mu) = h(w^{-1} mu): x_i -> x_{w(i)}.
RatFunc weyl_act(const Permutation& w, const RatFunc& h);
// (w . h)(mu) = h(w^{-1} . mu) with rho = (n-1, ..., 0).
RatFunc dot_act(const Permutation& w, const RatFunc& h);

std::string rational_to_string(const Rational& q);

}  // namespace expro
