#include "polya_pila/solve.hpp"

#include <algorithm>
#include <optional>

#include "polya_pila/errors.hpp"

namespace polya_pila {

int compare(const AlgebraicPoint& a, const AlgebraicPoint& b) {
  int c = compare(a.x, b.x);
  return c != 0 ? c : compare(a.y, b.y);
}

bool in_box(const AlgebraicPoint& pt, const Box& box) {
  return compare(pt.x, box.x0) >= 0 && compare(pt.x, box.x1) <= 0 && compare(pt.y, box.y0) >= 0 &&
         compare(pt.y, box.y1) <= 0;
}

int sign_at_point(const BiPoly& p, const BigRational& x, const AlgebraicReal& y) {
  return sign_at(y, specialize(p, Axis::X, x));
}

namespace {

using Coeffs = std::vector<IntPoly>;  // index = power of the eliminated variable

int main_degree(const Coeffs& c) {
  int d = static_cast<int>(c.size()) - 1;
  while (d >= 0 && c[static_cast<std::size_t>(d)].empty()) --d;
  return d;
}

// Remainder of b modulo a in the main variable, valid when a's leading coefficient
// is a constant (then no spurious zeros are introduced).
Coeffs reduce_mod(Coeffs b, const Coeffs& a) {
  int da = main_degree(a);
  const IntPoly& la = a[static_cast<std::size_t>(da)];
  if (intpoly::degree(la) != 0) return b;
  BigInt lc = la[0];
  int db = main_degree(b);
  while (db >= da) {
    IntPoly top = b[static_cast<std::size_t>(db)];
    // b <- lc * b - top * main^(db-da) * a
    for (auto& c : b) c = intpoly::scale(c, lc);
    for (int e = 0; e <= da; ++e) {
      auto& slot = b[static_cast<std::size_t>(e + db - da)];
      slot = intpoly::sub(slot, intpoly::mul(top, a[static_cast<std::size_t>(e)]));
    }
    b.resize(static_cast<std::size_t>(db));
    db = main_degree(b);
    // keep coefficients small
    BigInt g = 0;
    for (const auto& c : b) {
      BigInt cg = intpoly::content(c);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cg.get_mpz_t());
    }
    if (g > 1) {
      for (auto& c : b)
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }
  b.resize(static_cast<std::size_t>(std::max(db + 1, 0)));
  return b;
}

// Resultant eliminating `main`, reducing the higher-degree operand first when possible.
IntPoly eliminate(const BiPoly& p, const BiPoly& q, Axis main) {
  Coeffs a = p.integer_coefficients_in(main);
  Coeffs b = q.integer_coefficients_in(main);
  if (main_degree(b) >= main_degree(a) && main_degree(a) >= 1) b = reduce_mod(std::move(b), a);
  else if (main_degree(a) > main_degree(b) && main_degree(b) >= 1) a = reduce_mod(std::move(a), b);
  if (main_degree(a) < 0 || main_degree(b) < 0) return {};
  return resultant_int(a, b);
}

BigRational lambda_candidate(int index) {
  static const long table[][2] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 1}, {-3, 1},
                                  {1, 3}, {5, 2}, {-5, 3}, {7, 1}, {-7, 2}, {11, 3}, {13, 5}};
  constexpr int n = sizeof(table) / sizeof(table[0]);
  if (index < n) return BigRational(table[index][0], table[index][1]);
  BigRational r(index * 7 + 3, index + 11);
  r.canonicalize();
  return r;
}

// Matches an enclosure of a coordinate against isolated candidate roots.
// Returns the matched index, -1 if the value is certainly outside [lo, hi], or
// nullopt if more precision is needed.
std::optional<int> match(const RationalInterval& enc, std::vector<AlgebraicReal>& candidates,
                         const BigRational& lo, const BigRational& hi) {
  if (enc.hi < lo || enc.lo > hi) return -1;
  // candidates cover (lo - 1, hi + 1); the value is one of them once enc lies in that range
  if (!(enc.lo > lo - 1 && enc.hi < hi + 1)) return std::nullopt;
  int found = -1, hits = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto c = candidates[i].enclosure();
    if (c.hi < enc.lo || c.lo > enc.hi) continue;
    // open isolating intervals only touch at their ends
    if (!candidates[i].is_rational() && (c.hi == enc.lo || c.lo == enc.hi)) continue;
    ++hits;
    found = static_cast<int>(i);
  }
  if (hits == 1) return found;
  if (hits == 0) throw std::logic_error("common_zeros: coordinate enclosure matches no resultant root");
  for (auto& c : candidates) {
    auto e = c.enclosure();
    if (!(e.hi < enc.lo || e.lo > enc.hi)) c = c.bisect();
  }
  return std::nullopt;
}

struct GenericProjection {
  BigRational lambda;
  IntPoly r;       // square-free resultant in u = x + lambda y
  IntPoly s0, s1;  // first subresultant coefficients; y = -s0/s1 at roots of r
};

std::optional<GenericProjection> try_projection(const BiPoly& p, const BiPoly& q, const BigRational& lambda) {
  BiPoly ps = p.shear_x(-lambda), qs = q.shear_x(-lambda);
  Coeffs a = ps.integer_coefficients_in(Axis::Y);
  Coeffs b = qs.integer_coefficients_in(Axis::Y);
  if (main_degree(a) < 1 || main_degree(b) < 1) return std::nullopt;
  if (main_degree(a) < main_degree(b)) std::swap(a, b);
  {
    // reduce the higher-degree operand when that keeps both of positive degree
    Coeffs ra = a, rb = b;
    if (main_degree(b) >= main_degree(a)) rb = reduce_mod(b, a);
    else ra = reduce_mod(a, b);
    if (main_degree(ra) < 0 || main_degree(rb) < 0) throw PreconditionError("common component");
    if (main_degree(ra) >= 1 && main_degree(rb) >= 1) {
      a = std::move(ra);
      b = std::move(rb);
    }
    if (main_degree(a) < main_degree(b)) std::swap(a, b);
  }
  IntPoly res = resultant_int(a, b);
  if (res.empty()) throw PreconditionError("common component");
  GenericProjection gp{lambda, intpoly::square_free(res), {}, {}};
  if (intpoly::degree(gp.r) <= 0) return gp;
  const IntPoly& lead = a[static_cast<std::size_t>(main_degree(a))];
  if (intpoly::degree(intpoly::gcd(gp.r, lead)) > 0) return std::nullopt;
  if (main_degree(b) == 1) {
    // the first subresultant is a constant multiple of the linear operand
    gp.s0 = b[0];
    gp.s1 = b[1];
  } else {
    auto sub = subresultant_int(a, b, 1);
    gp.s0 = sub[0];
    gp.s1 = sub[1];
  }
  if (gp.s1.empty() || intpoly::degree(intpoly::gcd(gp.r, gp.s1)) > 0) return std::nullopt;
  return gp;
}

}  // namespace

std::vector<AlgebraicPoint> common_zeros(const BiPoly& p0, const BiPoly& q0, const Box& box) {
  if (p0.is_zero() || q0.is_zero()) throw PreconditionError("common component");
  BiPoly p = p0.primitive(), q = q0.primitive();
  if (p.is_constant() || q.is_constant()) return {};

  std::optional<GenericProjection> gp;
  for (int idx = 0; !gp; ++idx) {
    if (idx > 200) throw std::logic_error("common_zeros: no generic projection found");
    gp = try_projection(p, q, lambda_candidate(idx));
  }
  std::vector<AlgebraicPoint> out;
  if (intpoly::degree(gp->r) <= 0) return out;
  const BigRational& lam = gp->lambda;

  BigRational ly0 = lam * box.y0, ly1 = lam * box.y1;
  BigRational u_lo = box.x0 + std::min(ly0, ly1), u_hi = box.x1 + std::max(ly0, ly1);
  auto us = AlgebraicReal::roots_of(gp->r, OpenRange::between(u_lo - 1, u_hi + 1));
  if (us.empty()) return out;

  IntPoly ty = eliminate(p, q, Axis::X);
  if (ty.empty()) throw PreconditionError("common component");
  auto ys = AlgebraicReal::roots_of(ty, OpenRange::between(box.y0 - 1, box.y1 + 1));
  std::vector<AlgebraicReal> xs;
  if (lam != 0) {
    IntPoly tx = eliminate(p, q, Axis::Y);
    if (tx.empty()) throw PreconditionError("common component");
    xs = AlgebraicReal::roots_of(tx, OpenRange::between(box.x0 - 1, box.x1 + 1));
  }

  for (AlgebraicReal u : us) {
    std::optional<int> yi, xi;
    while (true) {
      RationalInterval ue = u.enclosure();
      RationalInterval d = evaluate(gp->s1, ue);
      if (d.contains_zero()) {
        u = u.bisect();
        continue;
      }
      RationalInterval n = evaluate(gp->s0, ue);
      RationalInterval ye = RationalInterval::point(0) - n / d;
      yi = match(ye, ys, box.y0, box.y1);
      if (!yi) {
        u = u.bisect();
        continue;
      }
      if (*yi < 0) break;
      if (lam == 0) {
        xi = 0;
        break;
      }
      RationalInterval xe = ue - RationalInterval::point(lam) * ys[static_cast<std::size_t>(*yi)].enclosure();
      xi = match(xe, xs, box.x0, box.x1);
      if (xi) break;
      u = u.bisect();
      ys[static_cast<std::size_t>(*yi)] = ys[static_cast<std::size_t>(*yi)].bisect();
      yi.reset();
    }
    if (!yi || *yi < 0 || (xi && *xi < 0)) continue;
    AlgebraicPoint pt{lam == 0 ? u : xs[static_cast<std::size_t>(*xi)], ys[static_cast<std::size_t>(*yi)]};
    if (in_box(pt, box)) out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  // generic position makes points distinct; keep the guard for exact duplicates anyway
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare(a, b) == 0; }),
            out.end());
  return out;
}

Box global_box(const BiPoly& p, const BiPoly& q) {
  IntPoly tx = eliminate(p.primitive(), q.primitive(), Axis::Y);
  IntPoly ty = eliminate(p.primitive(), q.primitive(), Axis::X);
  if (tx.empty() || ty.empty()) throw PreconditionError("common component");
  BigRational bx(intpoly::cauchy_bound(tx)), by(intpoly::cauchy_bound(ty));
  return {-bx, bx, -by, by};
}

std::vector<AlgebraicPoint> vertical_fiber(const BiPoly& p, const AlgebraicReal& x0, const BigRational& y0,
                                           const BigRational& y1) {
  std::vector<AlgebraicPoint> out;
  if (auto xr = x0.as_rational()) {
    UniPoly f = specialize(p, Axis::X, *xr);
    if (f.is_zero()) throw PreconditionError("curve contains the vertical line x = " + to_string(*xr));
    if (f.degree() <= 0) return out;
    IntPoly fi = f.primitive_integer();
    for (const auto& y : AlgebraicReal::roots_of(fi, OpenRange::between(y0 - 1, y1 + 1))) {
      if (compare(y, y0) >= 0 && compare(y, y1) <= 0) out.push_back({x0, y});
    }
    return out;
  }
  BiPoly m = BiPoly::from_uni(UniPoly(x0.minimal_data()), Axis::X);
  auto iv = x0.enclosure();
  for (auto& pt : common_zeros(p, m, Box{iv.lo, iv.hi, y0, y1})) {
    if (compare(pt.x, x0) == 0) out.push_back({x0, pt.y});
  }
  return out;
}

}  // namespace polya_pila
