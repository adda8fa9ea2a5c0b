#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polya_pila/curve.hpp"
#include "polya_pila/parse.hpp"
#include "polya_pila/solve.hpp"

namespace polya_pila {

struct RationalPoint {
  BigRational x;
  BigRational y;
  BigInt height;  // max of the coordinate heights

  static RationalPoint of(const BigRational& x, const BigRational& y);
  friend bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

/// Calls f(a, b) for every reduced fraction a/b with max(|a|, b) <= H, b ascending then a ascending.
void for_each_fraction(long H, const std::function<void(long, long)>& f);

/// Distinct rational roots of height at most H of an integer polynomial, increasing.
/// Throws PreconditionError("identically zero") for p = 0.
std::vector<BigRational> rational_roots(const IntPoly& p, long H);

/// Rational points of the curve with both coordinate heights <= H, inside `box` when given,
/// sorted by (x, y).
std::vector<RationalPoint> enumerate_rational_points(const PlaneCurve& curve, long H,
                                                     const std::optional<Box>& box = std::nullopt);

/// Integer points with |x|, |y| <= H.
std::vector<RationalPoint> enumerate_integral_points(const PlaneCurve& curve, long H);

enum class AxisAction { Identity, Negate, Invert, NegateInvert };

struct SymmetryMap {
  AxisAction x = AxisAction::Identity;
  AxisAction y = AxisAction::Identity;

  /// The 16 maps, identity first.
  static std::vector<SymmetryMap> all();
  /// Image of a point; nullopt when an inverted coordinate is zero.
  std::optional<RationalPoint> apply(const RationalPoint& pt) const;
  /// Content-free numerator of P composed with the map; its zero set is the image of the curve.
  BiPoly apply(const BiPoly& p) const;
  std::string name() const;
  friend bool operator==(const SymmetryMap&, const SymmetryMap&) = default;
};

std::vector<std::pair<SymmetryMap, PlaneCurve>> symmetry_orbit(const PlaneCurve& curve);

/// Returns the points of the curve of height <= H inside the closed unit square.
using BoxCounter = std::function<std::vector<RationalPoint>(const PlaneCurve&, long)>;

/// Rational points of height <= H in the box, by enumeration.
std::vector<RationalPoint> enumerate_in_unit_box(const PlaneCurve& curve, long H);

/// #Gamma(Q, H) from unit-square counts: points with a coordinate in {0, 1, -1} are found
/// directly, every other point is counted once through the symmetry taking it into (0, 1)^2.
long count_via_box(const PlaneCurve& curve, long H, const BoxCounter& box_counter = enumerate_in_unit_box);

struct HypersurfaceCount {
  long total = 0;                              // solving for x3 over all (x1, x2)
  std::vector<std::pair<long, long>> slices;   // (c, count on x1 = c), solving for x2 over (c, x3)
  long slice_sum = 0;
};

/// Integer points of {f = 0} in [-H, H]^3 for f in the variables x1, x2, x3.
HypersurfaceCount enumerate_hypersurface_points(const SparsePoly& f, long H);

/// Integer points by testing all (2H+1)^3 triples.
long count_hypersurface_by_triples(const SparsePoly& f, long H);

}  // namespace polya_pila
