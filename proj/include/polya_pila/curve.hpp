#pragma once

#include "polya_pila/bipoly.hpp"

namespace polya_pila {

/// The curve {P = 0} for a square-free P of positive degree, assumed irreducible over Q.
class PlaneCurve {
 public:
  const BiPoly& defining() const { return p_; }
  int degree() const { return d_; }

 private:
  friend PlaneCurve curve_new(const BiPoly& p);
  friend PlaneCurve curve_unchecked(const BiPoly& p);
  BiPoly p_;
  int d_ = 0;
};

/// Validates and wraps P. Throws PreconditionError "degree must be positive",
/// "not square-free", or "reducible" (probabilistic line-restriction diagnostic).
PlaneCurve curve_new(const BiPoly& p);

/// Wraps P after only the degree check; for callers that construct known-good curves
/// (coordinate symmetries of a validated curve).
PlaneCurve curve_unchecked(const BiPoly& p);

/// Certified check that Res_v(p, q) is not the zero polynomial. An exact specialization at a
/// rational point is tried first; the full resultant is computed only when that is inconclusive.
bool resultant_nonzero(const BiPoly& p, const BiPoly& q, Axis eliminate);

/// True when P divides q, i.e. q vanishes on the whole curve (P irreducible).
bool vanishes_on_curve(const PlaneCurve& c, const BiPoly& q);

}  // namespace polya_pila
