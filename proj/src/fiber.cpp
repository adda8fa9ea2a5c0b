#include "polya_pila/fiber.hpp"

#include <algorithm>
#include <stdexcept>

#include "polya_pila/solve.hpp"

namespace polya_pila {

namespace {

// coefficient table c[j][i] of x^i y^j
using Table = std::vector<std::vector<BigRational>>;

Table table_of(const BiPoly& p) {
  Table t(static_cast<std::size_t>(std::max(0, p.degree_in(Axis::Y)) + 1),
          std::vector<BigRational>(static_cast<std::size_t>(std::max(0, p.degree_in(Axis::X)) + 1)));
  for (const auto& [m, c] : p.terms()) t[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)] = c;
  return t;
}

RationalInterval horner(const std::vector<BigRational>& c, const RationalInterval& x) {
  RationalInterval acc = RationalInterval::point(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RationalInterval::point(*it);
  return acc;
}

RationalInterval evaluate_table(const Table& t, const RationalInterval& x, const RationalInterval& y) {
  RationalInterval acc = RationalInterval::point(0);
  for (auto it = t.rbegin(); it != t.rend(); ++it) acc = acc * y + horner(*it, x);
  return acc;
}

bool excludes_zero(const RationalInterval& v) { return !v.contains_zero(); }

class FiberLine {
 public:
  FiberLine(const BiPoly& p, const AlgebraicReal& x0) : p_(p), x_(x0) {
    derivs_.push_back(table_of(p));
    polys_.push_back(p);
  }

  int sign_at_y(const BigRational& y) const { return sign_at(x_, specialize(p_, Axis::Y, y)); }

  RationalInterval x_enclosure(const BigRational& width) {
    if (!x_.is_rational() && x_.enclosure().width() > width) x_ = x_.refine(width);
    return x_.enclosure();
  }

  const Table& derivative(int j) {
    while (static_cast<int>(derivs_.size()) <= j) {
      polys_.push_back(partial_derivative(polys_.back(), Axis::Y));
      derivs_.push_back(table_of(polys_.back()));
    }
    return derivs_[static_cast<std::size_t>(j)];
  }

  const BiPoly& derivative_poly(int j) {
    derivative(j);
    return polys_[static_cast<std::size_t>(j)];
  }

  // Order of vanishing of p(x0, .) at y, which must be a root.
  int multiplicity(const AlgebraicReal& y) {
    for (int j = 1;; ++j) {
      const BiPoly& dj = derivative_poly(j);
      if (dj.is_zero()) throw std::logic_error("isolate_fiber: root of excessive multiplicity");
      if (dj.is_constant()) return j;
      // cheap certificate first, exact membership test otherwise
      AlgebraicReal yr = y;
      for (int step = 0; step < 24; ++step) {
        BigRational w(BigInt(1), BigInt(1) << (2 * step + 4));
        if (!yr.is_rational() && yr.enclosure().width() > w) yr = yr.refine(w);
        if (excludes_zero(evaluate_table(derivative(j), x_enclosure(w), yr.enclosure()))) return j;
      }
      RationalInterval xe = x_.enclosure(), ye = yr.enclosure();
      bool vanishes = false;
      for (const auto& pt : common_zeros(p_, dj, Box{xe.lo, xe.hi, ye.lo, ye.hi})) {
        if (compare(pt.x, x_) == 0 && compare(pt.y, y) == 0) vanishes = true;
      }
      if (!vanishes) return j;
    }
  }

  // Rational window around a known root containing no other root of p(x0, .).
  FiberRoot window(const AlgebraicReal& y, int mult, int index, BigRational width) {
    AlgebraicReal yr = y;
    while (true) {
      BigRational lo, hi;
      if (yr.is_rational()) {
        lo = yr.interval().lo - width;
        hi = yr.interval().lo + width;
      } else {
        if (yr.enclosure().width() > width) yr = yr.refine(width);
        lo = yr.interval().lo;
        hi = yr.interval().hi;
      }
      if (excludes_zero(evaluate_table(derivative(mult), x_enclosure(width), RationalInterval{lo, hi})) &&
          sign_at_y(lo) != 0 && sign_at_y(hi) != 0)
        return {lo, hi, index};
      width /= 4;
    }
  }

  // Simple roots in the open interval (a, b); p(x0, a), p(x0, b) are nonzero.
  void isolate_gap(const BigRational& a, const BigRational& b, int sa, int sb, std::vector<FiberRoot>& out) {
    const BigRational w = (b - a) / 8;
    RationalInterval xe = x_enclosure(w);
    RationalInterval ye{a, b};
    if (excludes_zero(evaluate_table(derivs_[0], xe, ye))) return;
    if (excludes_zero(evaluate_table(derivative(1), xe, ye))) {
      if (sa != sb) out.push_back({a, b, -1});
      return;
    }
    BigRational c = (a + b) / 2;
    int sc = sign_at_y(c);
    for (int t = 3; sc == 0; t = 2 * t + 1) {
      c = (a + b) / 2 + (b - a) / t;
      sc = sign_at_y(c);
    }
    isolate_gap(a, c, sa, sc, out);
    isolate_gap(c, b, sc, sb, out);
  }

 private:
  BiPoly p_;
  AlgebraicReal x_;
  std::vector<BiPoly> polys_;
  std::vector<Table> derivs_;
};

}  // namespace

RationalInterval evaluate(const BiPoly& p, const RationalInterval& x, const RationalInterval& y) {
  return evaluate_table(table_of(p), x, y);
}

std::vector<FiberRoot> isolate_fiber(const BiPoly& p, const AlgebraicReal& x0, const std::vector<AlgebraicReal>& known,
                                     const BigRational& y0, const BigRational& y1) {
  FiberLine line(p, x0);
  std::vector<FiberRoot> windows;
  std::vector<int> mult;
  for (std::size_t i = 0; i < known.size(); ++i) mult.push_back(line.multiplicity(known[i]));

  BigRational width = known.empty() ? BigRational(1) : (y1 - y0 + 1) / 16;
  while (true) {
    windows.clear();
    for (std::size_t i = 0; i < known.size(); ++i)
      windows.push_back(line.window(known[i], mult[i], static_cast<int>(i), width));
    std::sort(windows.begin(), windows.end(), [](const FiberRoot& a, const FiberRoot& b) { return a.lo < b.lo; });
    bool disjoint = true;
    for (std::size_t i = 1; i < windows.size(); ++i) disjoint = disjoint && windows[i - 1].hi <= windows[i].lo;
    if (disjoint) break;
    width /= 16;
  }

  std::vector<FiberRoot> out;
  BigRational cursor = y0;
  auto gap_to = [&](const BigRational& end) {
    if (end <= cursor) return;
    int sa = line.sign_at_y(cursor), sb = line.sign_at_y(end);
    if (sa == 0 || sb == 0) throw std::logic_error("isolate_fiber: unlisted root at the end of the range");
    line.isolate_gap(cursor, end, sa, sb, out);
  };
  for (const auto& w : windows) {
    gap_to(w.lo);
    out.push_back(w);
    if (w.hi > cursor) cursor = w.hi;
  }
  gap_to(y1);
  return out;
}

int fiber_index(const std::vector<FiberRoot>& roots, const AlgebraicReal& y) {
  AlgebraicReal yr = y;
  for (int step = 0; step < 4096; ++step) {
    RationalInterval e = yr.enclosure();
    for (std::size_t t = 0; t < roots.size(); ++t) {
      if (roots[t].lo < e.lo && e.hi < roots[t].hi) return static_cast<int>(t);
    }
    if (yr.is_rational()) break;
    yr = yr.bisect();
  }
  throw std::logic_error("fiber_index: value is not a fiber root");
}

}  // namespace polya_pila
