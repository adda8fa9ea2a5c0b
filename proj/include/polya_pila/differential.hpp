#pragma once

#include <vector>

#include "polya_pila/bipoly.hpp"
#include "polya_pila/curve.hpp"

namespace polya_pila {

/// The derivation L = P_y d/dx - P_x d/dy, tangent to the curve.
struct TangentOperator {
  PlaneCurve curve;
  BiPoly px;
  BiPoly py;

  static TangentOperator of(const PlaneCurve& c);
};

/// P_y q_x - P_x q_y
BiPoly apply_L(const TangentOperator& op, const BiPoly& q);

struct WronskianEntry {
  int j = 0;
  BiPoly poly;
  int degree = -1;
  long degree_bound = 0;  // j (k + j d)
};

struct WronskianSequence {
  int k = 0;
  MonomialBasis basis;
  std::vector<WronskianEntry> entries;  // W_1 .. W_mu(k)
};

/// Leading principal minors det(L^(i-1) f_m)_{i,m <= j} of the matrix of iterated L applied to fs,
/// for j = 1..fs.size(). Entries that vanish identically stop the sequence early.
std::vector<BiPoly> leading_wronskians(const TangentOperator& op, const std::vector<BiPoly>& fs);

/// Partial Wronskians of the degree-k monomial basis. Requires k < d; throws
/// PreconditionError "linear dependence on curve" if some W_j vanishes on the curve.
WronskianSequence wronskians(const TangentOperator& op, int k);

struct RescaledDerivatives {
  Axis axis = Axis::X;
  BiPoly source;
  std::vector<BiPoly> numerators;     // Q_{axis,0..r}
  std::vector<long> degree_bounds;    // deg Q + 2 d j
};

/// Numerators Q_j with L_x^j Q = Q_j / P_y^(2j-1) (axis x; symmetric for y with P_x).
/// Throws PreconditionError "degenerate axis" when the relevant partial vanishes identically.
RescaledDerivatives rescaled_numerators(const TangentOperator& op, const BiPoly& q, Axis axis, int r);

}  // namespace polya_pila
