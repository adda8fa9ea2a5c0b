#pragma once

#include <vector>

#include "polya_pila/bipoly.hpp"
#include "polya_pila/roots.hpp"

namespace polya_pila {

/// Closed axis-parallel rectangle [x0, x1] x [y0, y1].
struct Box {
  BigRational x0, x1, y0, y1;
  static Box unit() { return {0, 1, 0, 1}; }
  static Box square(const BigRational& lo, const BigRational& hi) { return {lo, hi, lo, hi}; }
};

/// A real point with algebraic coordinates.
struct AlgebraicPoint {
  AlgebraicReal x;
  AlgebraicReal y;
};

/// Lexicographic comparison (x first).
int compare(const AlgebraicPoint& a, const AlgebraicPoint& b);
bool in_box(const AlgebraicPoint& pt, const Box& box);

/// Distinct common real zeros of p and q inside the closed box, sorted by (x, y).
/// Throws PreconditionError("common component") if p and q share a factor.
std::vector<AlgebraicPoint> common_zeros(const BiPoly& p, const BiPoly& q, const Box& box);

/// A box that contains every real common zero of p and q (from resultant root bounds).
Box global_box(const BiPoly& p, const BiPoly& q);

/// Points of {p = 0} on the vertical line x = x0 with y in [y0, y1], sorted by y.
/// p must not vanish identically on that line.
std::vector<AlgebraicPoint> vertical_fiber(const BiPoly& p, const AlgebraicReal& x0, const BigRational& y0,
                                           const BigRational& y1);

/// Exact sign of p at a point whose x coordinate is rational.
int sign_at_point(const BiPoly& p, const BigRational& x, const AlgebraicReal& y);

}  // namespace polya_pila
