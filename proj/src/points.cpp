#include "polya_pila/points.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "polya_pila/errors.hpp"

namespace polya_pila {

namespace {

bool height_ok(const BigRational& q, long H) { return rational_height(q) <= H; }

// Reduced fractions a/b with max(|a|, b) <= H inside [lo, hi].
void for_each_fraction_in(long H, const BigRational& lo, const BigRational& hi, const std::function<void(long, long)>& f) {
  for (long b = 1; b <= H; ++b) {
    BigRational blo = lo * b, bhi = hi * b;
    BigInt first, last;
    mpz_cdiv_q(first.get_mpz_t(), blo.get_num_mpz_t(), blo.get_den_mpz_t());
    mpz_fdiv_q(last.get_mpz_t(), bhi.get_num_mpz_t(), bhi.get_den_mpz_t());
    long a0 = first < -H ? -H : first.get_si();
    long a1 = last > H ? H : last.get_si();
    for (long a = a0; a <= a1; ++a)
      if (std::gcd(a, b) == 1) f(a, b);
  }
}

// Homogenized specialization: coefficients (in the free variable) of b^D P at main = a/b,
// where table[j][i] is the coefficient of main^i free^j and D the main degree.
IntPoly specialize_table(const std::vector<IntPoly>& table, int D, const BigInt& a, const BigInt& b) {
  std::vector<BigInt> apow(static_cast<std::size_t>(D) + 1), bpow(static_cast<std::size_t>(D) + 1);
  apow[0] = 1;
  bpow[0] = 1;
  for (int i = 1; i <= D; ++i) {
    apow[static_cast<std::size_t>(i)] = apow[static_cast<std::size_t>(i) - 1] * a;
    bpow[static_cast<std::size_t>(i)] = bpow[static_cast<std::size_t>(i) - 1] * b;
  }
  IntPoly out(table.size());
  for (std::size_t j = 0; j < table.size(); ++j) {
    BigInt acc = 0;
    const IntPoly& c = table[j];
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      acc += c[i] * apow[i] * bpow[static_cast<std::size_t>(D) - i];
    }
    out[j] = acc;
  }
  intpoly::trim(out);
  return out;
}

// table[j] = coefficient of free^j as an integer polynomial in main
std::vector<IntPoly> integer_table(const BiPoly& p, Axis main) {
  return p.integer_coefficients_in(other(main));
}

// False when p has no root modulo some small prime not dividing its leading coefficient,
// which rules out rational roots.
bool may_have_rational_root(const IntPoly& p) {
  static const unsigned long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  std::vector<unsigned long> r(p.size());
  for (unsigned long l : primes) {
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = mpz_fdiv_ui(p[i].get_mpz_t(), l);
    if (r.back() == 0) continue;
    bool root = false;
    for (unsigned long t = 0; t < l && !root; ++t) {
      unsigned long acc = 0;
      for (auto it = r.rbegin(); it != r.rend(); ++it) acc = (acc * t + *it) % l;
      root = acc == 0;
    }
    if (!root) return false;
  }
  return true;
}

// Residue classes (a mod l, b mod l) over which the homogenized specialization keeps a
// projective root modulo l. A rational point (a/b, u/v) gives the root (u : v) of
// sum_j table_j(a, b) u^j v^(n-j) modulo every l, so a fraction outside them carries no point.
class LineSieve {
 public:
  LineSieve(const std::vector<IntPoly>& table, int D) {
    const std::size_t n = table.size();
    const auto Du = static_cast<std::size_t>(D);
    for (unsigned long l = 3; l < 128; l += 2) {
      bool prime = true;
      for (unsigned long q = 3; q * q <= l && prime; q += 2) prime = l % q != 0;
      if (!prime) continue;
      std::vector<std::vector<unsigned long>> t(n, std::vector<unsigned long>(Du + 1, 0));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < table[j].size(); ++i) t[j][i] = mpz_fdiv_ui(table[j][i].get_mpz_t(), l);
      // the specialization at (a, b) is a unit multiple of the one at (a/b, 1), so the
      // answer depends only on the projective class of (a : b)
      auto has_root = [&](unsigned long a, unsigned long b) {
        std::vector<unsigned long> f(n), ap(Du + 1, 1), bp(Du + 1, 1);
        for (std::size_t i = 1; i <= Du; ++i) {
          ap[i] = ap[i - 1] * a % l;
          bp[i] = bp[i - 1] * b % l;
        }
        bool zero = true;
        for (std::size_t j = 0; j < n; ++j) {
          unsigned long acc = 0;
          for (std::size_t i = 0; i <= Du; ++i) acc = (acc + t[j][i] * ap[i] % l * bp[Du - i]) % l;
          f[j] = acc;
          zero = zero && acc == 0;
        }
        if (zero || n == 0 || f[n - 1] == 0) return true;
        for (unsigned long w = 0; w < l; ++w) {
          unsigned long acc = 0;
          for (std::size_t j = n; j-- > 0;) acc = (acc * w + f[j]) % l;
          if (acc == 0) return true;
        }
        return false;
      };
      std::vector<char> affine(l);
      for (unsigned long a = 0; a < l; ++a) affine[a] = has_root(a, 1);
      const char at_infinity = has_root(1, 0);
      Prime pr{l, std::vector<char>(l * l, 1)};
      for (unsigned long b = 1; b < l; ++b) {
        unsigned long inv = 1;
        for (unsigned long e = l - 2, base = b; e; e >>= 1, base = base * base % l)
          if (e & 1) inv = inv * base % l;
        for (unsigned long a = 0; a < l; ++a) pr.ok[a * l + b] = affine[a * inv % l];
      }
      for (unsigned long a = 1; a < l; ++a) pr.ok[a * l] = at_infinity;
      primes_.push_back(std::move(pr));
    }
  }

  bool admits(long a, long b) const {
    for (const auto& pr : primes_) {
      const auto l = static_cast<long>(pr.l);
      const auto ra = static_cast<unsigned long>(((a % l) + l) % l), rb = static_cast<unsigned long>(((b % l) + l) % l);
      if (!pr.ok[ra * pr.l + rb]) return false;
    }
    return true;
  }

 private:
  struct Prime {
    unsigned long l;
    std::vector<char> ok;
  };
  std::vector<Prime> primes_;
};

// Rational roots of height <= H in [lo, hi].
std::vector<BigRational> rational_roots_in(IntPoly p, long H, const BigRational& lo, const BigRational& hi) {
  intpoly::trim(p);
  if (p.empty()) throw PreconditionError("identically zero");
  std::vector<BigRational> out;
  auto keep = [&](const BigRational& q) {
    if (q >= lo && q <= hi && height_ok(q, H)) out.push_back(q);
  };
  if (p[0] == 0) {
    keep(BigRational(0));
    std::size_t z = 0;
    while (p[z] == 0) ++z;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(z));
  }
  const int n = intpoly::degree(p);
  if (n == 1) {
    BigRational q(-p[0], p[1]);
    q.canonicalize();
    keep(q);
  } else if (n >= 2 && may_have_rational_root(p)) {
    // a root p/q in lowest terms has q | lc and p | constant term
    const BigInt lc = abs(p.back()), c0 = abs(p[0]);
    IntPoly g = intpoly::square_free(p);
    const BigRational sep(BigInt(1), BigInt(H) * H);
    BigRational range_lo = std::max(lo, BigRational(-H)) - 1, range_hi = std::min(hi, BigRational(H)) + 1;
    for (const auto& iv : isolate_real_roots(g, OpenRange::between(range_lo, range_hi))) {
      if (iv.exact()) {
        keep(iv.lo);
        continue;
      }
      BigRational a = iv.lo, b = iv.hi;
      int sa = intpoly::sign_at(g, a);
      for (int step = 0;; ++step) {
        const bool narrow = b - a < sep;
        // the fraction search costs more than a bisection step, so it runs every few steps
        if (narrow || step % 4 == 0) {
          BigRational cand = simplest_between(a, b);
          if (cand.get_den() > H) break;  // shrinking only makes denominators larger
          if (narrow) {
            if (mpz_divisible_p(lc.get_mpz_t(), cand.get_den_mpz_t()) &&
                mpz_divisible_p(c0.get_mpz_t(), cand.get_num_mpz_t()) && intpoly::sign_at(g, cand) == 0)
              keep(cand);
            break;
          }
        }
        BigRational mid = (a + b) / 2;
        int sm = intpoly::sign_at(g, mid);
        if (sm == 0) {
          keep(mid);
          break;
        }
        if (sa * sm < 0) {
          b = mid;
        } else {
          a = mid;
          sa = sm;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Points of the curve on the line main = value (value a/b), free coordinate in [lo, hi].
void points_on_line(const std::vector<IntPoly>& table, int D, Axis main, long a, long b, long H, const BigRational& lo,
                    const BigRational& hi, std::vector<RationalPoint>& out) {
  BigRational v(a, b);
  IntPoly f = specialize_table(table, D, BigInt(a), BigInt(b));
  auto emit = [&](const BigRational& w) {
    out.push_back(main == Axis::X ? RationalPoint::of(v, w) : RationalPoint::of(w, v));
  };
  if (f.empty()) {
    // the curve contains this whole line
    for_each_fraction_in(H, lo, hi, [&](long c, long e) { emit(BigRational(c, e)); });
    return;
  }
  for (const auto& w : rational_roots_in(std::move(f), H, lo, hi)) emit(w);
}

void sort_unique(std::vector<RationalPoint>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

BigRational map_coordinate(AxisAction act, const BigRational& v) {
  switch (act) {
    case AxisAction::Identity: return v;
    case AxisAction::Negate: return -v;
    case AxisAction::Invert: return 1 / v;
    case AxisAction::NegateInvert: return -1 / v;
  }
  return v;
}

BiPoly map_poly(AxisAction act, Axis a, const BiPoly& p) {
  switch (act) {
    case AxisAction::Identity: return p;
    case AxisAction::Negate: return p.negate(a);
    case AxisAction::Invert: return p.invert(a);
    case AxisAction::NegateInvert: return p.negate(a).invert(a);
  }
  return p;
}

const char* action_name(AxisAction act) {
  switch (act) {
    case AxisAction::Identity: return "id";
    case AxisAction::Negate: return "neg";
    case AxisAction::Invert: return "inv";
    case AxisAction::NegateInvert: return "neginv";
  }
  return "?";
}

// Integer coefficients of f keyed by exponent triples, denominators cleared.
std::vector<std::pair<std::array<int, 3>, BigInt>> integer_terms(const SparsePoly& f) {
  BigInt l = 1;
  for (const auto& [e, c] : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::pair<std::array<int, 3>, BigInt>> out;
  for (const auto& [e, c] : f) {
    if (e.size() != 3) throw PreconditionError("hypersurface polynomial must use three variables");
    BigRational s = c * l;
    out.push_back({{e[0], e[1], e[2]}, s.get_num()});
  }
  return out;
}

BigInt ipow(long base, int e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), static_cast<unsigned long>(e));
  if (base < 0 && e % 2 == 1) r = -r;
  return r;
}

// Number of integers t in [-H, H] with f = 0 when coordinate `free` is t and the other two are fixed.
long integer_solutions(const std::vector<std::pair<std::array<int, 3>, BigInt>>& terms, std::array<long, 3> fixed,
                       int free, long H) {
  IntPoly g;
  for (const auto& [e, c] : terms) {
    BigInt v = c;
    for (int i = 0; i < 3; ++i)
      if (i != free) v *= ipow(fixed[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
    auto idx = static_cast<std::size_t>(e[static_cast<std::size_t>(free)]);
    if (g.size() <= idx) g.resize(idx + 1);
    g[idx] += v;
  }
  intpoly::trim(g);
  if (g.empty()) return 2 * H + 1;
  long n = 0;
  for (const auto& q : rational_roots_in(g, H, BigRational(-H), BigRational(H)))
    if (q.get_den() == 1) ++n;
  return n;
}

}  // namespace

RationalPoint RationalPoint::of(const BigRational& x, const BigRational& y) {
  BigInt hx = rational_height(x), hy = rational_height(y);
  return {x, y, hx > hy ? hx : hy};
}

void for_each_fraction(long H, const std::function<void(long, long)>& f) {
  for_each_fraction_in(H, BigRational(-H), BigRational(H), f);
}

std::vector<BigRational> rational_roots(const IntPoly& p, long H) {
  return rational_roots_in(p, H, BigRational(-H), BigRational(H));
}

std::vector<RationalPoint> enumerate_rational_points(const PlaneCurve& curve, long H, const std::optional<Box>& box) {
  if (H < 1) throw PreconditionError("H must be positive");
  const BiPoly& p = curve.defining();
  const Box b = box.value_or(Box::square(-H, H));
  const auto table = integer_table(p, Axis::X);
  const int D = std::max(0, p.degree_in(Axis::X));
  const LineSieve sieve(table, D);
  std::vector<RationalPoint> out;
  for_each_fraction_in(H, b.x0, b.x1, [&](long a, long den) {
    if (sieve.admits(a, den)) points_on_line(table, D, Axis::X, a, den, H, b.y0, b.y1, out);
  });
  sort_unique(out);
  return out;
}

std::vector<RationalPoint> enumerate_integral_points(const PlaneCurve& curve, long H) {
  if (H < 1) throw PreconditionError("H must be positive");
  const BiPoly& p = curve.defining();
  const auto table = integer_table(p, Axis::X);
  const int D = std::max(0, p.degree_in(Axis::X));
  std::vector<RationalPoint> out;
  const LineSieve sieve(table, D);
  for (long a = -H; a <= H; ++a) {
    if (!sieve.admits(a, 1)) continue;
    IntPoly f = specialize_table(table, D, BigInt(a), BigInt(1));
    if (f.empty()) {
      for (long c = -H; c <= H; ++c) out.push_back(RationalPoint::of(BigRational(a), BigRational(c)));
      continue;
    }
    for (const auto& w : rational_roots_in(std::move(f), H, BigRational(-H), BigRational(H)))
      if (w.get_den() == 1) out.push_back(RationalPoint::of(BigRational(a), w));
  }
  sort_unique(out);
  return out;
}

std::vector<SymmetryMap> SymmetryMap::all() {
  const AxisAction acts[] = {AxisAction::Identity, AxisAction::Negate, AxisAction::Invert, AxisAction::NegateInvert};
  std::vector<SymmetryMap> out;
  for (AxisAction ax : acts)
    for (AxisAction ay : acts) out.push_back({ax, ay});
  return out;
}

std::optional<RationalPoint> SymmetryMap::apply(const RationalPoint& pt) const {
  auto inverts = [](AxisAction a) { return a == AxisAction::Invert || a == AxisAction::NegateInvert; };
  if ((inverts(x) && pt.x == 0) || (inverts(y) && pt.y == 0)) return std::nullopt;
  return RationalPoint::of(map_coordinate(x, pt.x), map_coordinate(y, pt.y));
}

BiPoly SymmetryMap::apply(const BiPoly& p) const {
  return map_poly(y, Axis::Y, map_poly(x, Axis::X, p)).primitive();
}

std::string SymmetryMap::name() const { return std::string("x:") + action_name(x) + ",y:" + action_name(y); }

std::vector<std::pair<SymmetryMap, PlaneCurve>> symmetry_orbit(const PlaneCurve& curve) {
  std::vector<std::pair<SymmetryMap, PlaneCurve>> out;
  for (const auto& g : SymmetryMap::all()) {
    BiPoly q = g.apply(curve.defining());
    // a line x = 0 inverts to a constant: its image has no points
    if (q.is_constant()) continue;
    out.emplace_back(g, curve_unchecked(q));
  }
  return out;
}

std::vector<RationalPoint> enumerate_in_unit_box(const PlaneCurve& curve, long H) {
  return enumerate_rational_points(curve, H, Box::unit());
}

long count_via_box(const PlaneCurve& curve, long H, const BoxCounter& box_counter) {
  if (H < 1) throw PreconditionError("H must be positive");
  const BiPoly& p = curve.defining();
  std::vector<RationalPoint> special;
  for (Axis main : {Axis::X, Axis::Y}) {
    const auto table = integer_table(p, main);
    const int D = std::max(0, p.degree_in(main));
    for (long v : {-1L, 0L, 1L}) points_on_line(table, D, main, v, 1, H, BigRational(-H), BigRational(H), special);
  }
  sort_unique(special);
  long total = static_cast<long>(special.size());
  for (const auto& [g, image] : symmetry_orbit(curve)) {
    for (const auto& pt : box_counter(image, H))
      if (pt.x > 0 && pt.x < 1 && pt.y > 0 && pt.y < 1) ++total;
  }
  return total;
}

HypersurfaceCount enumerate_hypersurface_points(const SparsePoly& f, long H) {
  if (H < 1) throw PreconditionError("H must be positive");
  const auto terms = integer_terms(f);
  HypersurfaceCount out;
  for (long a = -H; a <= H; ++a)
    for (long b = -H; b <= H; ++b) out.total += integer_solutions(terms, {a, b, 0}, 2, H);
  for (long c = -H; c <= H; ++c) {
    long n = 0;
    for (long t = -H; t <= H; ++t) n += integer_solutions(terms, {c, 0, t}, 1, H);
    out.slices.emplace_back(c, n);
    out.slice_sum += n;
  }
  return out;
}

long count_hypersurface_by_triples(const SparsePoly& f, long H) {
  const auto terms = integer_terms(f);
  long n = 0;
  for (long a = -H; a <= H; ++a)
    for (long b = -H; b <= H; ++b)
      for (long c = -H; c <= H; ++c) {
        BigInt v = 0;
        for (const auto& [e, coef] : terms) v += coef * ipow(a, e[0]) * ipow(b, e[1]) * ipow(c, e[2]);
        if (v == 0) ++n;
      }
  return n;
}

}  // namespace polya_pila
