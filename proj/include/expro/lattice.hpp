#pragma once

// Denominator lattices D(m), D(m, l), D(g, l, T), the polynomial p_T, and
// divisibility of observed denominators by lattice factors.

#include <string>
#include <vector>

#include "expro/ratfunc.hpp"
#include "expro/rootsys.hpp"

namespace expro {

// Distinct rearrangements S of T, sorted, T itself included.
std::vector<Weight> distinct_permutations(const Weight& t);
// (w . T)(x) for the w with w(T) = S: sum_j S_j (x_j + rho_j) - T(rho).
RatFunc dot_image_function(const Weight& s, const Weight& t);

struct PTPolynomial {
  Weight t;
  std::vector<RatFunc> roots;         // (w . T)(x) over W/W^T
  std::vector<RatFunc> coefficients;  // ascending powers of the formal variable
  int degree() const { return static_cast<int>(roots.size()); }
  std::string to_string() const;
};

PTPolynomial p_t_polynomial(const Weight& t);

struct LatticeFactor {
  std::string label;
  Poly product;
  std::vector<Poly> pieces;  // affine-linear factors of product
};

struct DenominatorLattice {
  std::string kind;
  std::vector<LatticeFactor> factors;
};

// Factors H_a + rho_m(H_a) + i for roots a of m, 1 <= i <= bound.
DenominatorLattice absolute_lattice(const SubalgebraSpec& m, int bound);
// Per W(l)-orbit O of roots of m outside l: prod_{a in O} (H_a + rho_g(H_a) + i).
DenominatorLattice relative_lattice(const SubalgebraSpec& m, const SubalgebraSpec& l, int bound);
// Per value c: prod over S != T of ((T - S)(x + rho) + c).
DenominatorLattice relative_t_lattice(const Weight& t, const std::vector<Rational>& values);

struct Divisibility {
  bool divides = false;
  Poly residual;                // what is left after removing lattice pieces
  std::vector<Poly> matched;    // pieces used, with multiplicity
};

Divisibility divide_by_lattice(const Poly& denominator, const DenominatorLattice& lattice);

}  // namespace expro
