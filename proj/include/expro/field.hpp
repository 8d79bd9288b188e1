#pragma once

// Coefficient fields for weight operators. SymbolicField keeps exact rational
// functions; PointField specializes every coefficient at a Cartan point mu,
// i.e. works in the Verma module of highest weight mu.

#include <string>

#include "expro/ratfunc.hpp"
#include "expro/rootsys.hpp"

namespace expro {

struct SymbolicField {
  using Scalar = RatFunc;

  Scalar lift(const RatFunc& h) const { return h; }
  // h^nu
  Scalar lift_shifted(const RatFunc& h, const Weight& nu) const { return h.shift(nu); }
  std::string describe() const { return "symbolic"; }
  static std::string scalar_string(const Scalar& s) { return s.to_string(); }
};

struct PointField {
  using Scalar = Rational;

  Weight point;

  Scalar lift(const RatFunc& h) const { return h.eval(point); }
  Scalar lift_shifted(const RatFunc& h, const Weight& nu) const { return h.eval(point + nu); }
  std::string describe() const { return "point(" + weight_to_string(point) + ")"; }
  static std::string scalar_string(const Scalar& s) { return rational_to_string(s); }
};

}  // namespace expro
