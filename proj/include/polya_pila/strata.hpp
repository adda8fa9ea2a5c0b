#pragma once

#include <string>
#include <vector>

#include "polya_pila/curve.hpp"
#include "polya_pila/fiber.hpp"
#include "polya_pila/solve.hpp"

namespace polya_pila {

struct StrataEntry {
  std::string role;
  BiPoly poly;
  long degree_bound = 0;
  bool vanishes_identically = false;  // zero on the whole curve; skipped when collecting points
};

struct StrataPolys {
  enum class Kind { Sigma, Pi };
  Kind kind = Kind::Sigma;
  int parameter = 0;  // k for sigma, r for pi
  std::vector<StrataEntry> entries;
};

/// [P_x, P_y, W_1, ..., W_mu(k)]; P_x and P_y together describe the singular locus.
StrataPolys sigma_polys(const PlaneCurve& curve, int k);

/// [P_x, P_y, P_x+P_y, P_x-P_y, x-1, x+1, y-1, y+1, y_x0..y_xr, x_y0..x_yr].
StrataPolys pi_polys(const PlaneCurve& curve, int r);

struct SplitPoint {
  AlgebraicPoint point;
  std::vector<std::string> provenance;
};

struct SplitPointSet {
  std::vector<SplitPoint> points;  // sorted by x then y, pairwise distinct
  long bezout_budget = 0;          // sum of d * (degree bound) over the contributing entries
};

/// Points of the curve inside `box` where an entry vanishes (for sigma, the singular
/// points in place of the separate P_x, P_y zeros).
SplitPointSet strata_points(const PlaneCurve& curve, const StrataPolys& polys, const Box& box);

/// Union of several split point sets, deduplicated, budgets added.
SplitPointSet merge(const std::vector<SplitPointSet>& sets);

enum class Direction { XMonotone, YMonotone };

struct ArcPiece {
  int slab = 0;    // between critical x-values slab and slab + 1
  int branch = 0;  // index among the roots of P(x, .) in (0, 1) over the slab
  int left_point = 0;   // limit point index in the fiber at the slab's left end
  int right_point = 0;  // and at its right end
};

struct Arc {
  Direction direction = Direction::XMonotone;
  AlgebraicPoint start, end;  // closure endpoints, ordered by x
  int branch = 0;             // branch index over the first slab
  std::vector<ArcPiece> pieces;
  std::vector<std::pair<std::string, int>> signs;  // constant signs along the arc
};

struct Fiber {
  AlgebraicReal x;
  std::vector<FiberRoot> roots;  // curve points on this vertical line within [0, 1], by y
  std::vector<int> split_of;     // index into the split points, -1 for regular points
  std::vector<bool> is_split;
  std::vector<int> arc_of;  // arc through each regular point, -1 at split points
};

struct ArcDecomposition {
  PlaneCurve curve;
  int k = 0;
  int r = 0;
  std::vector<Arc> arcs;
  SplitPointSet split_points;
  std::vector<Fiber> fibers;  // one per critical x-value, increasing
  std::vector<BigRational> slab_samples;
  int component_count = 0;
};

/// Decomposition of the curve in the unit square into monotone arcs between the points of
/// sigma_k and pi_r (and box crossings). Throws PreconditionError for k >= d or a degenerate
/// axis, CertificateError "certification failure" on an internal inconsistency.
ArcDecomposition decompose_arcs(const PlaneCurve& curve, int k, int r);

/// Arc decomposition from precomputed split points (used by tests and by r/k-free callers).
ArcDecomposition decompose_with_points(const PlaneCurve& curve, int k, int r, SplitPointSet split);

bool harnack_check(const ArcDecomposition& dec);

/// Index of the arc containing a curve point of the open unit square, or -1 when the point is
/// a split point (or outside the box). The point must lie on the curve.
int locate_on_arcs(const ArcDecomposition& dec, const AlgebraicPoint& pt);

}  // namespace polya_pila
