#include "expro/lattice.hpp"

#include <algorithm>
#include <set>

#include "expro/error.hpp"

namespace expro {

namespace {

Poly linear(const Weight& coeffs, const Rational& constant) {
  Poly p(constant);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (sgn(coeffs[j]) != 0) p += Poly::variable(static_cast<int>(j)) * coeffs[j];
  return p;
}

Rational rho_coord(int j, int n) { return Rational(n - 1 - j); }  // 0-based j

// rho_m(H_ij): distance of i and j inside their block of m.
int block_height(const SubalgebraSpec& m, const Root& r) {
  int b = m.block_of(r.i);
  if (b < 0 || m.block_of(r.j) != b) throw Error(ErrorCode::kInvalidArgument, r.name() + " is not a root of " + m.name());
  const auto& blk = m.blocks()[b];
  auto pos = [&](int idx) { return static_cast<int>(std::find(blk.begin(), blk.end(), idx) - blk.begin()); };
  return pos(r.j) - pos(r.i);
}

Poly shifted_coroot(const Root& r, int rho, int i) {
  return Poly::variable(r.i - 1) - Poly::variable(r.j - 1) + Poly(Rational(rho + i));
}

}  // namespace

std::vector<Weight> distinct_permutations(const Weight& t) {
  Weight s = t;
  std::sort(s.begin(), s.end());
  std::vector<Weight> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

RatFunc dot_image_function(const Weight& s, const Weight& t) {
  const int n = static_cast<int>(t.size());
  Rational constant = 0;
  for (int j = 0; j < n; ++j) constant += (s[j] - t[j]) * rho_coord(j, n);
  return RatFunc(linear(s, constant));
}

std::string PTPolynomial::to_string() const {
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const RatFunc& c = coefficients[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (k > 0) out += "*t^" + std::to_string(k);
  }
  return out;
}

PTPolynomial p_t_polynomial(const Weight& t) {
  PTPolynomial p;
  p.t = t;
  p.coefficients = {RatFunc(1)};
  for (const Weight& s : distinct_permutations(t)) {
    RatFunc root = dot_image_function(s, t);
    p.roots.push_back(root);
    // multiply by (t - root)
    std::vector<RatFunc> next(p.coefficients.size() + 1, RatFunc(0));
    for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
      next[k + 1] += p.coefficients[k];
      next[k] -= p.coefficients[k] * root;
    }
    p.coefficients = std::move(next);
  }
  return p;
}

DenominatorLattice absolute_lattice(const SubalgebraSpec& m, int bound) {
  DenominatorLattice lat;
  lat.kind = "absolute(" + m.name() + ")";
  for (const Root& r : m.positive_roots())
    for (int i = 1; i <= bound; ++i) {
      Poly f = shifted_coroot(r, block_height(m, r), i);
      lat.factors.push_back({r.name() + ",i=" + std::to_string(i), f, {f}});
    }
  return lat;
}

DenominatorLattice relative_lattice(const SubalgebraSpec& m, const SubalgebraSpec& l, int bound) {
  DenominatorLattice lat;
  lat.kind = "relative(" + m.name() + "," + l.name() + ")";
  std::vector<Root> rest;
  for (const Root& r : m.positive_roots())
    if (!l.contains_root(r)) rest.push_back(r);
  std::set<Root> seen;
  for (const Root& start : rest) {
    if (seen.count(start)) continue;
    std::vector<Root> orbit{start};
    seen.insert(start);
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (const auto& w : l.weyl_generators()) {
        int a = w[orbit[q].i - 1] + 1, b = w[orbit[q].j - 1] + 1;
        Root img{std::min(a, b), std::max(a, b)};
        if (!seen.count(img)) {
          seen.insert(img);
          orbit.push_back(img);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    std::string label = "{";
    for (std::size_t q = 0; q < orbit.size(); ++q) label += (q ? "," : "") + orbit[q].name();
    label += "}";
    for (int i = 1; i <= bound; ++i) {
      LatticeFactor f{label + ",i=" + std::to_string(i), Poly(1L), {}};
      for (const Root& r : orbit) {
        Poly piece = shifted_coroot(r, r.height(), i);
        f.pieces.push_back(piece);
        f.product *= piece;
      }
      lat.factors.push_back(std::move(f));
    }
  }
  return lat;
}

DenominatorLattice relative_t_lattice(const Weight& t, const std::vector<Rational>& values) {
  DenominatorLattice lat;
  lat.kind = "relative_T(" + weight_to_string(t) + ")";
  const int n = static_cast<int>(t.size());
  for (const Rational& c : values) {
    LatticeFactor f{"c=" + rational_to_string(c), Poly(1L), {}};
    for (const Weight& s : distinct_permutations(t)) {
      if (s == t) continue;
      Weight d = t - s;
      Rational constant = c;
      for (int j = 0; j < n; ++j) constant += d[j] * rho_coord(j, n);
      Poly piece = linear(d, constant);
      f.pieces.push_back(piece);
      f.product *= piece;
    }
    lat.factors.push_back(std::move(f));
  }
  return lat;
}

Divisibility divide_by_lattice(const Poly& denominator, const DenominatorLattice& lattice) {
  Divisibility out;
  out.residual = denominator;
  for (const auto& f : lattice.factors)
    for (const auto& piece : f.pieces) {
      if (piece.is_constant()) continue;
      while (!out.residual.is_constant()) {
        auto q = out.residual.divide_exact(piece);
        if (!q) break;
        out.residual = *q;
        out.matched.push_back(piece);
      }
    }
  out.divides = out.residual.is_constant();
  return out;
}

}  // namespace expro
