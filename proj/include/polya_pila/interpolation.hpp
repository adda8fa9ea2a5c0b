#pragma once

#include <optional>
#include <vector>

#include "polya_pila/points.hpp"
#include "polya_pila/strata.hpp"

namespace polya_pila {

struct AuxiliaryCurve {
  int k = 0;
  BiPoly poly;  // integer coefficients, content 1, total degree <= k
  std::vector<RationalPoint> support;
};

/// A nonzero polynomial of degree <= k through all points, from the kernel of the evaluation
/// matrix (fraction-free elimination, first free column set to one); nullopt when the kernel is
/// trivial. Throws PreconditionError("duplicate points").
std::optional<AuxiliaryCurve> fit_curve(const std::vector<RationalPoint>& points, int k);

struct Covering {
  std::vector<AuxiliaryCurve> curves;
  std::vector<RationalPoint> uncovered;
  long N = 0;
};

/// Greedy cover of points sorted along an arc: each curve is fitted to the longest run starting
/// at the first uncovered point.
Covering cover_arc_points(const std::vector<RationalPoint>& points, int k);

/// Distinct points of {q = 0} on the open arc `arc` of the decomposition.
int count_intersections_on_arc(const ArcDecomposition& dec, int arc, const BiPoly& q);

/// Intersection counts for every arc at once, plus the number of common zeros at split points.
struct ArcIncidence {
  std::vector<int> per_arc;
  int at_split_points = 0;
  int in_box = 0;  // all common zeros in the closed unit square
};
ArcIncidence arc_incidence(const ArcDecomposition& dec, const BiPoly& q);

struct ChebyshevCertificate {
  int arc = 0;
  int k = 0;
  BiPoly q;
  int count = 0;
  long bound = 0;  // mu(k)
};

/// One certificate per arc asserting count < mu(k). Requires deg q <= dec.k; throws
/// CertificateError("certificate violated") with a reproduction bundle otherwise.
std::vector<ChebyshevCertificate> chebyshev_certify(const ArcDecomposition& dec, const BiPoly& q);

/// |common zeros of P and q in the plane| <= d * deg q.
bool bezout_global_check(const PlaneCurve& curve, const BiPoly& q);

}  // namespace polya_pila
