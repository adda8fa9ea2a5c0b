#include "polya_pila/strata.hpp"

#include <algorithm>
#include <numeric>

#include "polya_pila/differential.hpp"
#include "json.hpp"
#include "polya_pila/errors.hpp"

namespace polya_pila {

namespace {

StrataEntry entry(const PlaneCurve& c, std::string role, BiPoly p, long bound) {
  StrataEntry e;
  e.role = std::move(role);
  e.vanishes_identically = vanishes_on_curve(c, p);
  e.poly = std::move(p);
  e.degree_bound = bound;
  return e;
}

void add_points(SplitPointSet& set, const std::vector<AlgebraicPoint>& pts, const std::string& role) {
  for (const auto& pt : pts) {
    auto it = std::find_if(set.points.begin(), set.points.end(),
                           [&](const SplitPoint& s) { return compare(s.point, pt) == 0; });
    if (it != set.points.end()) {
      if (std::find(it->provenance.begin(), it->provenance.end(), role) == it->provenance.end())
        it->provenance.push_back(role);
    } else {
      set.points.push_back({pt, {role}});
    }
  }
}

void sort_points(SplitPointSet& set) {
  std::sort(set.points.begin(), set.points.end(),
            [](const SplitPoint& a, const SplitPoint& b) { return compare(a.point, b.point) < 0; });
}

CertificateError certification_failure(const PlaneCurve& c, const std::string& detail) {
  nlohmann::json bundle{{"curve", c.defining().to_string()}, {"detail", detail}};
  return CertificateError("certification failure: " + detail, bundle.dump());
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<AlgebraicReal> branches_at(const BiPoly& p, const BigRational& x) {
  UniPoly f = specialize(p, Axis::X, x);
  if (f.degree() <= 0) return {};
  return AlgebraicReal::roots_of(f.primitive_integer(), OpenRange::between(0, 1));
}

// For each branch over the slab (lo, hi), the index of the fiber point it tends to at the
// end `at_lo ? lo : hi`. Horizontal separators between fiber points are kept uncrossed by
// moving the probe close enough to the fiber.
std::vector<int> branch_limits(const PlaneCurve& c, const Fiber& fiber, const AlgebraicReal& lo,
                               const AlgebraicReal& hi, bool at_lo, std::size_t branch_count) {
  if (branch_count == 0) return {};
  const BiPoly& p = c.defining();
  const std::size_t m = fiber.roots.size();
  if (m == 0) throw certification_failure(c, "branches without a limit on a critical fiber");
  // isolating intervals are disjoint and their ends are not on the curve
  std::vector<BigRational> seps;
  for (std::size_t t = 0; t + 1 < m; ++t) seps.push_back(fiber.roots[t].hi);

  AlgebraicReal bound = at_lo ? hi : lo;
  const AlgebraicReal& x0 = at_lo ? lo : hi;
  const BigRational search_lo = lo.enclosure().lo, search_hi = hi.enclosure().hi;
  for (const auto& s : seps) {
    UniPoly f = specialize(p, Axis::Y, s);
    if (f.degree() <= 0) continue;
    for (const auto& root : AlgebraicReal::roots_of(f.primitive_integer(), OpenRange::between(search_lo - 1, search_hi + 1))) {
      if (compare(root, lo) <= 0 || compare(root, hi) >= 0) continue;
      if (at_lo ? compare(root, bound) < 0 : compare(root, bound) > 0) bound = root;
    }
  }
  BigRational probe = at_lo ? rational_between(x0, bound) : rational_between(bound, x0);
  auto ys = branches_at(p, probe);
  if (ys.size() != branch_count) throw certification_failure(c, "branch count changes inside a slab");
  std::vector<int> out;
  for (const auto& y : ys) {
    int t = 0;
    while (t < static_cast<int>(seps.size()) && compare(y, seps[static_cast<std::size_t>(t)]) > 0) ++t;
    out.push_back(t);
  }
  return out;
}

struct SignSource {
  std::string role;
  BiPoly poly;
};

std::vector<SignSource> sign_sources(const PlaneCurve& c, int r) {
  auto op = TangentOperator::of(c);
  std::vector<SignSource> out{{"P_x", op.px}, {"P_y", op.py}, {"P_x+P_y", op.px + op.py}, {"P_x-P_y", op.px - op.py}};
  auto yx = rescaled_numerators(op, BiPoly::y(), Axis::X, r);
  auto xy = rescaled_numerators(op, BiPoly::x(), Axis::Y, r);
  for (int j = 0; j <= r; ++j) out.push_back({"y_x" + std::to_string(j), yx.numerators[static_cast<std::size_t>(j)]});
  for (int j = 0; j <= r; ++j) out.push_back({"x_y" + std::to_string(j), xy.numerators[static_cast<std::size_t>(j)]});
  return out;
}

}  // namespace

StrataPolys sigma_polys(const PlaneCurve& curve, int k) {
  auto op = TangentOperator::of(curve);
  auto w = wronskians(op, k);
  const long d = curve.degree();
  StrataPolys out;
  out.kind = StrataPolys::Kind::Sigma;
  out.parameter = k;
  out.entries.push_back(entry(curve, "P_x", op.px, d - 1));
  out.entries.push_back(entry(curve, "P_y", op.py, d - 1));
  for (auto& e : w.entries) out.entries.push_back(entry(curve, "W_" + std::to_string(e.j), e.poly, e.degree_bound));
  return out;
}

StrataPolys pi_polys(const PlaneCurve& curve, int r) {
  auto op = TangentOperator::of(curve);
  const long d = curve.degree();
  StrataPolys out;
  out.kind = StrataPolys::Kind::Pi;
  out.parameter = r;
  const BiPoly one = BiPoly::constant(1);
  out.entries.push_back(entry(curve, "P_x", op.px, d - 1));
  out.entries.push_back(entry(curve, "P_y", op.py, d - 1));
  out.entries.push_back(entry(curve, "P_x+P_y", op.px + op.py, d - 1));
  out.entries.push_back(entry(curve, "P_x-P_y", op.px - op.py, d - 1));
  out.entries.push_back(entry(curve, "x-1", BiPoly::x() - one, 1));
  out.entries.push_back(entry(curve, "x+1", BiPoly::x() + one, 1));
  out.entries.push_back(entry(curve, "y-1", BiPoly::y() - one, 1));
  out.entries.push_back(entry(curve, "y+1", BiPoly::y() + one, 1));
  for (Axis a : {Axis::X, Axis::Y}) {
    auto rd = rescaled_numerators(op, a == Axis::X ? BiPoly::y() : BiPoly::x(), a, r);
    const std::string name = a == Axis::X ? "y_x" : "x_y";
    for (int j = 0; j <= r; ++j) {
      auto idx = static_cast<std::size_t>(j);
      out.entries.push_back(entry(curve, name + std::to_string(j), rd.numerators[idx], rd.degree_bounds[idx]));
    }
  }
  return out;
}

SplitPointSet strata_points(const PlaneCurve& curve, const StrataPolys& polys, const Box& box) {
  const BiPoly& p = curve.defining();
  const long d = curve.degree();
  SplitPointSet out;
  std::size_t start = 0;
  if (polys.kind == StrataPolys::Kind::Sigma) {
    // singular points: common zeros of P with both partials
    const auto& ex = polys.entries.at(0);
    const auto& ey = polys.entries.at(1);
    out.bezout_budget += d * ex.degree_bound;
    std::vector<AlgebraicPoint> singular;
    if (!ex.poly.is_constant() && !ey.poly.is_constant()) {
      auto zx = common_zeros(p, ex.poly, box);
      auto zy = common_zeros(p, ey.poly, box);
      for (const auto& a : zx)
        if (std::any_of(zy.begin(), zy.end(), [&](const auto& b) { return compare(a, b) == 0; })) singular.push_back(a);
    }
    add_points(out, singular, "singular");
    start = 2;
  }
  for (std::size_t i = start; i < polys.entries.size(); ++i) {
    const auto& e = polys.entries[i];
    if (e.vanishes_identically) continue;
    out.bezout_budget += d * e.degree_bound;
    if (e.poly.is_constant()) continue;
    add_points(out, common_zeros(p, e.poly, box), e.role);
  }
  sort_points(out);
  return out;
}

SplitPointSet merge(const std::vector<SplitPointSet>& sets) {
  SplitPointSet out;
  for (const auto& s : sets) {
    out.bezout_budget += s.bezout_budget;
    for (const auto& pt : s.points)
      for (const auto& role : pt.provenance) add_points(out, {pt.point}, role);
  }
  sort_points(out);
  return out;
}

ArcDecomposition decompose_arcs(const PlaneCurve& curve, int k, int r) {
  if (k >= curve.degree()) throw PreconditionError("decompose_arcs: k must be smaller than the curve degree");
  if (r < 0) throw PreconditionError("decompose_arcs: r must be nonnegative");
  auto op = TangentOperator::of(curve);
  if (op.px.is_zero() || op.py.is_zero()) throw PreconditionError("degenerate axis");
  const Box unit = Box::unit();
  auto sigma = strata_points(curve, sigma_polys(curve, k), unit);
  auto pi = strata_points(curve, pi_polys(curve, r), unit);
  return decompose_with_points(curve, k, r, merge({sigma, pi}));
}

ArcDecomposition decompose_with_points(const PlaneCurve& curve, int k, int r, SplitPointSet split) {
  const BiPoly& p = curve.defining();
  auto op = TangentOperator::of(curve);
  if (op.px.is_zero() || op.py.is_zero()) throw PreconditionError("degenerate axis");
  const Box unit = Box::unit();
  {
    SplitPointSet crossings;
    const BiPoly one = BiPoly::constant(1);
    for (const BiPoly& line : {BiPoly::x(), BiPoly::x() - one, BiPoly::y(), BiPoly::y() - one})
      add_points(crossings, common_zeros(p, line, unit), "box");
    // vertical tangents and singular points; fibers are isolated around them
    add_points(crossings, common_zeros(p, op.py, unit), "P_y");
    long budget = split.bezout_budget;
    split = merge({split, crossings});
    split.bezout_budget = budget;
  }
  ArcDecomposition dec{curve, k, r, {}, std::move(split), {}, {}, 0};

  // critical x-values: 0, 1 and the split points' abscissae
  std::vector<AlgebraicReal> xs{AlgebraicReal(BigRational(0)), AlgebraicReal(BigRational(1))};
  for (const auto& s : dec.split_points.points) xs.push_back(s.point.x);
  std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return compare(a, b) == 0; }),
           xs.end());

  // split points grouped by critical x
  std::vector<std::vector<std::size_t>> on_line(xs.size());
  for (std::size_t i = 0; i < dec.split_points.points.size(); ++i) {
    const AlgebraicReal& sx = dec.split_points.points[i].point.x;
    auto it = std::lower_bound(xs.begin(), xs.end(), sx, [](const auto& a, const auto& b) { return compare(a, b) < 0; });
    on_line[static_cast<std::size_t>(it - xs.begin())].push_back(i);
  }

  std::vector<std::size_t> fiber_base;  // global node index of each fiber's first point
  std::size_t nodes = 0;
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    std::vector<AlgebraicReal> known;
    for (auto i : on_line[xi]) known.push_back(dec.split_points.points[i].point.y);
    Fiber f{xs[xi], isolate_fiber(p, xs[xi], known, 0, 1), {}, {}, {}};
    for (const auto& root : f.roots) {
      f.split_of.push_back(root.special < 0 ? -1 : static_cast<int>(on_line[xi][static_cast<std::size_t>(root.special)]));
      f.is_split.push_back(root.special >= 0);
    }
    fiber_base.push_back(nodes);
    nodes += f.roots.size();
    dec.fibers.push_back(std::move(f));
  }

  struct PieceInfo {
    ArcPiece piece;
    AlgebraicReal y;  // branch ordinate at the slab sample
    std::size_t left, right;  // fiber point nodes
  };
  std::vector<PieceInfo> pieces;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    BigRational sample = rational_between(xs[s], xs[s + 1]);
    dec.slab_samples.push_back(sample);
    auto ys = branches_at(p, sample);
    auto lefts = branch_limits(curve, dec.fibers[s], xs[s], xs[s + 1], true, ys.size());
    auto rights = branch_limits(curve, dec.fibers[s + 1], xs[s], xs[s + 1], false, ys.size());
    for (std::size_t b = 0; b < ys.size(); ++b) {
      pieces.push_back({ArcPiece{static_cast<int>(s), static_cast<int>(b), lefts[b], rights[b]}, ys[b],
                        fiber_base[s] + static_cast<std::size_t>(lefts[b]),
                        fiber_base[s + 1] + static_cast<std::size_t>(rights[b])});
    }
  }

  // components of the closed set: fiber points and pieces joined at their limits
  UnionFind uf(nodes + pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    uf.unite(nodes + i, pieces[i].left);
    uf.unite(nodes + i, pieces[i].right);
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < nodes + pieces.size(); ++i) roots.push_back(uf.find(i));
  std::sort(roots.begin(), roots.end());
  dec.component_count = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());

  // arcs: chains of pieces through fiber points that are not split points
  std::vector<bool> node_split;
  std::vector<int> node_point;  // split point index
  for (const auto& f : dec.fibers)
    for (std::size_t i = 0; i < f.roots.size(); ++i) {
      node_split.push_back(f.is_split[i]);
      node_point.push_back(f.split_of[i]);
    }
  auto split_at = [&](std::size_t node) {
    return dec.split_points.points[static_cast<std::size_t>(node_point[node])].point;
  };
  std::vector<int> starting_at(nodes, -1), ending_at(nodes, -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!node_split[pieces[i].left]) {
      if (starting_at[pieces[i].left] != -1) throw certification_failure(curve, "regular fiber point with two branches");
      starting_at[pieces[i].left] = static_cast<int>(i);
    }
    if (!node_split[pieces[i].right]) {
      if (ending_at[pieces[i].right] != -1) throw certification_failure(curve, "regular fiber point with two branches");
      ending_at[pieces[i].right] = static_cast<int>(i);
    }
  }
  const auto sources = sign_sources(curve, r);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!node_split[pieces[i].left]) continue;  // not the first piece of its arc
    Arc arc;
    arc.start = split_at(pieces[i].left);
    arc.branch = pieces[i].piece.branch;
    std::size_t cur = i;
    while (true) {
      arc.pieces.push_back(pieces[cur].piece);
      const BigRational& xs_sample = dec.slab_samples[static_cast<std::size_t>(pieces[cur].piece.slab)];
      std::vector<std::pair<std::string, int>> signs;
      for (const auto& src : sources) signs.emplace_back(src.role, sign_at_point(src.poly, xs_sample, pieces[cur].y));
      if (arc.signs.empty()) {
        arc.signs = std::move(signs);
      } else if (arc.signs != signs) {
        throw certification_failure(curve, "sign change along an arc");
      }
      std::size_t end = pieces[cur].right;
      if (node_split[end]) {
        arc.end = split_at(end);
        break;
      }
      if (starting_at[end] < 0) throw certification_failure(curve, "regular fiber point without a continuation");
      cur = static_cast<std::size_t>(starting_at[end]);
    }
    auto sign_of = [&](const std::string& role) {
      for (const auto& [name, s] : arc.signs)
        if (name == role) return s;
      return 0;
    };
    if (sign_of("P_x") == 0 || sign_of("P_y") == 0 || sign_of("P_x+P_y") == 0 || sign_of("P_x-P_y") == 0)
      throw certification_failure(curve, "a partial derivative vanishes on an arc");
    arc.direction = sign_of("P_x+P_y") * sign_of("P_x-P_y") < 0 ? Direction::XMonotone : Direction::YMonotone;
    dec.arcs.push_back(std::move(arc));
  }
  std::stable_sort(dec.arcs.begin(), dec.arcs.end(), [](const Arc& a, const Arc& b) {
    if (a.direction != b.direction) return a.direction == Direction::XMonotone;
    return compare(a.start, b.start) < 0;
  });
  for (auto& f : dec.fibers) f.arc_of.assign(f.roots.size(), -1);
  for (std::size_t a = 0; a < dec.arcs.size(); ++a) {
    const auto& ps = dec.arcs[a].pieces;
    for (std::size_t q = 0; q + 1 < ps.size(); ++q)
      dec.fibers[static_cast<std::size_t>(ps[q].slab + 1)].arc_of[static_cast<std::size_t>(ps[q].right_point)] =
          static_cast<int>(a);
  }
  return dec;
}

bool harnack_check(const ArcDecomposition& dec) {
  const long d = dec.curve.degree();
  return dec.component_count <= d * d;
}

int locate_on_arcs(const ArcDecomposition& dec, const AlgebraicPoint& pt) {
  if (!in_box(pt, Box::unit())) return -1;
  for (const auto& s : dec.split_points.points)
    if (compare(s.point, pt) == 0) return -1;
  // slab index or fiber index
  const auto& fibers = dec.fibers;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    int c = compare(pt.x, fibers[i].x);
    if (c == 0) {
      if (fibers[i].roots.empty()) return -1;
      return fibers[i].arc_of[static_cast<std::size_t>(fiber_index(fibers[i].roots, pt.y))];
    }
    if (c < 0) {
      if (i == 0) return -1;
      const int slab = static_cast<int>(i) - 1;
      // no split point lies over the open slab, so every root on this line is simple and interior
      const int branch = fiber_index(isolate_fiber(dec.curve.defining(), pt.x, {}, 0, 1), pt.y);
      for (std::size_t a = 0; a < dec.arcs.size(); ++a)
        for (const auto& piece : dec.arcs[a].pieces)
          if (piece.slab == slab && piece.branch == branch) return static_cast<int>(a);
      return -1;
    }
  }
  return -1;
}

}  // namespace polya_pila
