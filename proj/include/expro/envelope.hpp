#pragma once

// Finite elements of F(g) for gl_n in PBW normal form sum F^I h E^J, with
// F and E factors in the reference root order and h in Frac U(h).

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "expro/ratfunc.hpp"
#include "expro/rootsys.hpp"

namespace expro {

struct PbwKey {
  MultiIndex f;
  MultiIndex e;
  friend auto operator<=>(const PbwKey&, const PbwKey&) = default;
};

class PbwElement {
 public:
  using TermMap = std::map<PbwKey, RatFunc>;

  PbwElement() = default;
  explicit PbwElement(int n);

  static PbwElement scalar(int n, const RatFunc& h);
  static PbwElement monomial(int n, const MultiIndex& f, const RatFunc& h, const MultiIndex& e);
  // 'E' or 'F' root vector raised to a power.
  static PbwElement root_vector(int n, char letter, const Root& r, int power = 1);
  // Elementary matrix e_ab of gl_n, 1-based.
  static PbwElement gl_basis(int n, int a, int b);
  // "F12^2 * (x1-x2)^-1 * E13 + 3 * H12"
  static PbwElement parse(std::string_view text, int n);

  int rank() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const MultiIndex& f, const RatFunc& h, const MultiIndex& e);
  // Common ad-h weight |J| - |I| of all terms, nullopt when inhomogeneous.
  std::optional<Weight> ad_weight() const;

  PbwElement operator-() const;
  PbwElement& operator+=(const PbwElement& o);
  PbwElement& operator-=(const PbwElement& o);
  friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
  friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }
  friend PbwElement operator*(const PbwElement& a, const PbwElement& b);
  // Left multiplication by a Cartan coefficient.
  friend PbwElement operator*(const RatFunc& h, const PbwElement& a);
  friend bool operator==(const PbwElement& a, const PbwElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

PbwElement commutator(const PbwElement& a, const PbwElement& b);

// Anti-automorphism with E_ij <-> F_ij and identity on h.
PbwElement star(const PbwElement& a);

// Pure-Cartan coefficient of a weight-zero element.
RatFunc hc_project(const PbwElement& a);

// Coefficients c_JK of the right form sum F^J E^K c_JK.
std::map<PbwKey, RatFunc> right_form(const PbwElement& a);

// Terms whose F and E parts both have height <= bound.
PbwElement truncate_height(const PbwElement& a, int bound);

struct CentralElement {
  PbwElement expression;
  RatFunc hc_image;
};

// Omega_2 = sum_{a,b} e_ab e_ba.
CentralElement casimir_omega2(int n);

// Result of e_ab * F^K modulo F(g) n+: map F-index -> polynomial coefficient.
using VermaTerms = std::map<MultiIndex, RatFunc>;
const VermaTerms& verma_generator_action(int n, int a, int b, const MultiIndex& k);

}  // namespace expro
