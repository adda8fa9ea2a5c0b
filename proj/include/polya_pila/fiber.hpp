#pragma once

#include <vector>

#include "polya_pila/bipoly.hpp"
#include "polya_pila/roots.hpp"

namespace polya_pila {

/// Bivariate interval evaluation of p over X x Y.
RationalInterval evaluate(const BiPoly& p, const RationalInterval& x, const RationalInterval& y);

struct FiberRoot {
  BigRational lo, hi;  // the root is the only one of p(x0, .) in (lo, hi); p(x0, lo), p(x0, hi) != 0
  int special = -1;    // index into the caller's known roots, or -1
};

/// Real roots of p(x0, .) in [y0, y1], isolated by rational intervals, increasing. `known` must
/// contain every multiple root in [y0, y1] and any root equal to y0 or y1; each of them appears in
/// the output with its index. Works for algebraic x0 without forming resultants.
std::vector<FiberRoot> isolate_fiber(const BiPoly& p, const AlgebraicReal& x0, const std::vector<AlgebraicReal>& known,
                                     const BigRational& y0, const BigRational& y1);

/// Index of the root in `roots` equal to y, where (x0, y) is known to lie on the curve within
/// the isolated range.
int fiber_index(const std::vector<FiberRoot>& roots, const AlgebraicReal& y);

}  // namespace polya_pila
