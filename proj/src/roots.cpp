#include "polya_pila/roots.hpp"

#include <algorithm>
#include <sstream>

#include "polya_pila/errors.hpp"

namespace polya_pila {

// ---------------------------------------------------------------- intervals

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  BigRational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  return a * RationalInterval{1 / b.hi, 1 / b.lo};
}

RationalInterval evaluate(const IntPoly& p, const RationalInterval& x) {
  if (p.empty()) return RationalInterval::point(0);
  if (x.lo == x.hi) return RationalInterval::point(intpoly::evaluate(p, x.lo));
  RationalInterval acc = RationalInterval::point(BigRational(p.back()));
  for (int i = intpoly::degree(p) - 1; i >= 0; --i) {
    acc = acc * x + RationalInterval::point(BigRational(p[static_cast<std::size_t>(i)]));
  }
  return acc;
}

// ---------------------------------------------------------------- Sturm

namespace {

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  seq.push_back(p);
  seq.push_back(p.derivative());
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto rem = seq[seq.size() - 2].divmod(seq.back()).second;
    if (rem.is_zero()) break;
    // positive rescaling keeps the sign pattern and the coefficients small
    IntPoly prim = rem.primitive_integer();
    UniPoly next(prim);
    if (sgn(next.leading()) != sgn(rem.leading())) next = -next;
    seq.push_back(-next);
  }
  return seq;
}

int variations_at(const std::vector<UniPoly>& seq, const Endpoint& e) {
  int last = 0, count = 0;
  for (const auto& q : seq) {
    int s;
    if (e.kind == Endpoint::Kind::Finite) {
      s = q.sign_at(e.value);
    } else {
      s = sgn(q.leading());
      if (e.kind == Endpoint::Kind::NegInf && q.degree() % 2 == 1) s = -s;
    }
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int count_roots(const UniPoly& p, const BigRational& a, const BigRational& b) {
  if (p.is_zero()) throw PreconditionError("identically zero");
  if (p.degree() == 0 || a >= b) return 0;
  UniPoly sf = square_free_part(p);
  auto seq = sturm_sequence(sf);
  return variations_at(seq, Endpoint::at(a)) - variations_at(seq, Endpoint::at(b));
}

std::vector<IsolatingInterval> sturm_isolate(const UniPoly& p, const OpenRange& range) {
  if (p.is_zero()) throw PreconditionError("identically zero");
  std::vector<IsolatingInterval> out;
  if (p.degree() == 0) return out;
  UniPoly sf = square_free_part(p);
  auto seq = sturm_sequence(sf);
  IntPoly ip = sf.primitive_integer();
  BigInt bound = intpoly::cauchy_bound(ip);
  BigRational lo = range.lo.kind == Endpoint::Kind::NegInf ? BigRational(-bound) : range.lo.value;
  BigRational hi = range.hi.kind == Endpoint::Kind::PosInf ? BigRational(bound) : range.hi.value;
  if (range.lo.kind == Endpoint::Kind::PosInf || range.hi.kind == Endpoint::Kind::NegInf || lo >= hi) return out;

  // roots in (a, b] = V(a) - V(b); the square-free sequence makes this valid at roots too.
  struct Job {
    BigRational a, b;
    int va, vb;
  };
  std::vector<Job> stack;
  stack.push_back({lo, hi, variations_at(seq, Endpoint::at(lo)), variations_at(seq, Endpoint::at(hi))});
  while (!stack.empty()) {
    Job job = std::move(stack.back());
    stack.pop_back();
    int n = job.va - job.vb;
    if (n == 0) continue;
    bool root_a = sf.sign_at(job.a) == 0;
    bool root_b = sf.sign_at(job.b) == 0;
    if (n == 1 && root_b) {
      out.push_back({job.b, job.b});
      continue;
    }
    if (n == 1 && !root_a) {
      out.push_back({job.a, job.b});
      continue;
    }
    BigRational m = (job.a + job.b) / 2;
    int vm = variations_at(seq, Endpoint::at(m));
    stack.push_back({m, job.b, vm, job.vb});
    stack.push_back({job.a, m, job.va, vm});
  }
  // the range is open: drop an exact root sitting on its upper end
  std::erase_if(out, [&](const IsolatingInterval& iv) { return iv.exact() && iv.lo == hi; });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

// ---------------------------------------------------------------- Descartes

namespace {

int descartes_variations(const IntPoly& q) {
  IntPoly rev(q.rbegin(), q.rend());
  intpoly::trim(rev);
  IntPoly s = intpoly::taylor_shift(rev, BigInt(1));
  int last = 0, count = 0;
  for (const auto& c : s) {
    int sg = sgn(c);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

bool vanishes_at_one(const IntPoly& q) {
  BigInt s = 0;
  for (const auto& c : q) s += c;
  return s == 0;
}

struct UnitNode {
  IntPoly q;  // roots in (0,1) <-> roots of p in (lo, hi)
  BigRational lo, hi;
  bool lo_is_root;  // lo is a root of p (recorded elsewhere)
};

void descartes_recurse(UnitNode node, std::vector<IsolatingInterval>& out) {
  if (!node.q.empty() && node.q[0] == 0) {
    // t | q: lo is a root of p
    node.q.erase(node.q.begin());
    node.lo_is_root = true;
  }
  if (intpoly::degree(node.q) <= 0) return;
  int v = descartes_variations(node.q);
  if (v == 0) return;
  bool hi_is_root = vanishes_at_one(node.q);
  if (v == 1 && !node.lo_is_root && !hi_is_root) {
    out.push_back({node.lo, node.hi});
    return;
  }
  int n = intpoly::degree(node.q);
  IntPoly left(node.q.size());
  for (int i = 0; i <= n; ++i) {
    left[static_cast<std::size_t>(i)] = node.q[static_cast<std::size_t>(i)];
    mpz_mul_2exp(left[static_cast<std::size_t>(i)].get_mpz_t(), left[static_cast<std::size_t>(i)].get_mpz_t(),
                 static_cast<mp_bitcnt_t>(n - i));
  }
  IntPoly right = intpoly::taylor_shift(left, BigInt(1));
  BigRational mid = (node.lo + node.hi) / 2;
  if (right[0] == 0) out.push_back({mid, mid});
  descartes_recurse({intpoly::primitive(std::move(left)), node.lo, mid, node.lo_is_root}, out);
  descartes_recurse({intpoly::primitive(std::move(right)), mid, node.hi, false}, out);
}

}  // namespace

std::vector<IsolatingInterval> isolate_real_roots(const IntPoly& p0, const OpenRange& range) {
  IntPoly p = intpoly::primitive(p0);
  if (p.empty()) throw PreconditionError("identically zero");
  std::vector<IsolatingInterval> out;
  if (intpoly::degree(p) == 0) return out;
  p = intpoly::square_free(p);
  BigInt bound = intpoly::cauchy_bound(p);
  if (range.lo.kind == Endpoint::Kind::PosInf || range.hi.kind == Endpoint::Kind::NegInf) return out;
  BigRational lo = range.lo.kind == Endpoint::Kind::NegInf ? BigRational(-bound) : range.lo.value;
  BigRational hi = range.hi.kind == Endpoint::Kind::PosInf ? BigRational(bound) : range.hi.value;
  if (lo >= hi) return out;
  if (intpoly::degree(p) == 1) {
    BigRational r(-p[0], p[1]);
    r.canonicalize();
    if (lo < r && r < hi) out.push_back({r, r});
    return out;
  }
  IntPoly q = intpoly::map_to_unit(p, lo, hi);
  // open range: a root at lo is excluded; the flag keeps it from ending an interval
  bool lo_root = !q.empty() && q[0] == 0;
  if (lo_root) q.erase(q.begin());
  descartes_recurse({q, lo, hi, lo_root}, out);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

// ---------------------------------------------------------------- AlgebraicReal

AlgebraicReal::AlgebraicReal(const BigRational& q) : poly_{-q.get_num(), q.get_den()}, iv_{q, q} {}

AlgebraicReal::AlgebraicReal(const IntPoly& poly, IsolatingInterval interval)
    : poly_(intpoly::square_free(poly)), iv_(std::move(interval)) {
  if (iv_.exact()) {
    BigRational q = iv_.lo;
    poly_ = IntPoly{-q.get_num(), q.get_den()};
  }
}

AlgebraicReal::AlgebraicReal(const UniPoly& poly, IsolatingInterval interval)
    : AlgebraicReal(poly.primitive_integer(), std::move(interval)) {}

std::vector<AlgebraicReal> AlgebraicReal::roots_of(const IntPoly& p, const OpenRange& range) {
  IntPoly sf = intpoly::square_free(p);
  std::vector<AlgebraicReal> out;
  for (auto& iv : isolate_real_roots(sf, range)) out.emplace_back(sf, iv);
  return out;
}

namespace {

BigInt floor_of(const BigRational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Fraction with the smallest denominator in the open interval (lo, hi); hi absent means +infinity.
BigRational simplest_in(const BigRational& lo, const std::optional<BigRational>& hi) {
  BigInt n = floor_of(lo) + 1;
  if (!hi || BigRational(n) < *hi) return BigRational(n);
  BigRational base(n - 1);
  BigRational frac_lo = lo - base, frac_hi = *hi - base;
  std::optional<BigRational> inv_hi;
  if (frac_lo != 0) inv_hi = 1 / frac_lo;
  BigRational inner = simplest_in(1 / frac_hi, inv_hi);
  return base + 1 / inner;
}

}  // namespace

BigRational simplest_between(const BigRational& lo, const BigRational& hi) { return simplest_in(lo, hi); }

std::optional<BigRational> AlgebraicReal::as_rational() const {
  if (iv_.exact()) return iv_.lo;
  if (intpoly::degree(poly_) == 1) {
    BigRational q(-poly_[0], poly_[1]);
    q.canonicalize();
    iv_ = {q, q};
    poly_ = IntPoly{-q.get_num(), q.get_den()};
    return q;
  }
  // a rational root has denominator dividing the leading coefficient, and two such
  // fractions are at least 1/lc^2 apart
  BigInt lc = abs(poly_.back());
  BigRational sep(BigInt(1), lc * lc);
  AlgebraicReal self = *this;
  while (!self.iv_.exact() && self.iv_.hi - self.iv_.lo >= sep) self.bisect_inplace();
  poly_ = self.poly_;
  iv_ = self.iv_;
  if (iv_.exact()) return iv_.lo;
  BigRational cand = simplest_in(iv_.lo, iv_.hi);
  if (cand.get_den() <= lc && intpoly::sign_at(poly_, cand) == 0) {
    iv_ = {cand, cand};
    poly_ = IntPoly{-cand.get_num(), cand.get_den()};
    return cand;
  }
  return std::nullopt;
}

void AlgebraicReal::bisect_inplace() {
  if (iv_.exact()) return;
  BigRational mid = (iv_.lo + iv_.hi) / 2;
  int sm = intpoly::sign_at(poly_, mid);
  if (sm == 0) {
    iv_ = {mid, mid};
    poly_ = IntPoly{-mid.get_num(), mid.get_den()};
    return;
  }
  int sl = intpoly::sign_at(poly_, iv_.lo);
  if (sl * sm < 0) {
    iv_.hi = mid;
  } else {
    iv_.lo = mid;
  }
}

AlgebraicReal AlgebraicReal::bisect() const {
  AlgebraicReal a = *this;
  a.bisect_inplace();
  return a;
}

AlgebraicReal AlgebraicReal::refine(const BigRational& width) const {
  AlgebraicReal a = *this;
  while (a.iv_.hi - a.iv_.lo > width) a.bisect_inplace();
  return a;
}

double AlgebraicReal::approx() const {
  AlgebraicReal self = *this;
  BigRational tol(BigInt(1), BigInt(1) << 56);
  BigRational scale = std::max(abs(iv_.lo), abs(iv_.hi));
  if (scale > 1) tol *= scale;
  while (!self.iv_.exact() && self.iv_.hi - self.iv_.lo > tol) self.bisect_inplace();
  poly_ = self.poly_;
  iv_ = self.iv_;
  BigRational m = (iv_.lo + iv_.hi) / 2;
  return m.get_d();
}

std::string AlgebraicReal::to_string() const {
  if (iv_.exact()) return polya_pila::to_string(iv_.lo);
  std::ostringstream os;
  os << "root of " << UniPoly(poly_).to_string() << " in (" << polya_pila::to_string(iv_.lo) << ", "
     << polya_pila::to_string(iv_.hi) << ")";
  return os.str();
}

namespace {

bool no_roots_inside(const IntPoly& p, const BigRational& lo, const BigRational& hi) {
  IntPoly q = intpoly::map_to_unit(p, lo, hi);
  return descartes_variations(q) == 0;
}

}  // namespace

int sign_at(AlgebraicReal a, const IntPoly& p0) {
  IntPoly p = p0;
  intpoly::trim(p);
  if (p.empty()) return 0;
  if (a.iv_.exact()) return intpoly::sign_at(p, a.iv_.lo);
  IntPoly g = intpoly::gcd(a.poly_, p);
  if (intpoly::degree(g) >= 1) {
    // g | poly_, so g has at most one (simple) root in the interval: the number itself if any
    int sl = intpoly::sign_at(g, a.iv_.lo), sh = intpoly::sign_at(g, a.iv_.hi);
    if (sl * sh < 0) return 0;
  }
  while (!a.iv_.exact() && !no_roots_inside(p, a.iv_.lo, a.iv_.hi)) a.bisect_inplace();
  if (a.iv_.exact()) return intpoly::sign_at(p, a.iv_.lo);
  return intpoly::sign_at(p, (a.iv_.lo + a.iv_.hi) / 2);
}

int sign_at(const AlgebraicReal& a, const UniPoly& p) {
  if (p.is_zero()) return 0;
  IntPoly ip = p.primitive_integer();
  int s = sign_at(a, ip);
  // primitive_integer normalizes to a positive leading coefficient
  return sgn(p.leading()) < 0 ? -s : s;
}

int compare(AlgebraicReal a, const BigRational& q) {
  while (true) {
    if (a.iv_.exact()) return cmp(a.iv_.lo, q) < 0 ? -1 : (cmp(a.iv_.lo, q) > 0 ? 1 : 0);
    if (q <= a.iv_.lo) return 1;
    if (q >= a.iv_.hi) return -1;
    int sq = intpoly::sign_at(a.poly_, q);
    if (sq == 0) return 0;
    int sl = intpoly::sign_at(a.poly_, a.iv_.lo);
    return sl * sq < 0 ? -1 : 1;
  }
}

int compare(AlgebraicReal a, AlgebraicReal b) {
  if (a.iv_.exact()) return -compare(b, a.iv_.lo);
  if (b.iv_.exact()) return compare(a, b.iv_.lo);
  // disjoint already?
  auto disjoint = [&]() { return a.iv_.hi <= b.iv_.lo || b.iv_.hi <= a.iv_.lo; };
  if (!disjoint()) {
    IntPoly g = intpoly::gcd(a.poly_, b.poly_);
    if (intpoly::degree(g) >= 1) {
      auto root_of_g = [&](const AlgebraicReal& v) {
        return intpoly::sign_at(g, v.iv_.lo) * intpoly::sign_at(g, v.iv_.hi) < 0;
      };
      if (root_of_g(a) && root_of_g(b)) {
        BigRational lo = std::max(a.iv_.lo, b.iv_.lo), hi = std::min(a.iv_.hi, b.iv_.hi);
        if (lo <= hi) {
          int sl = intpoly::sign_at(g, lo), sh = intpoly::sign_at(g, hi);
          if (sl == 0 || sh == 0 || sl * sh < 0) return 0;
        }
      }
    }
    while (!disjoint()) {
      a.bisect_inplace();
      b.bisect_inplace();
      if (a.iv_.exact() || b.iv_.exact()) return compare(a, b);
    }
  }
  return a.iv_.hi <= b.iv_.lo ? -1 : 1;
}

BigRational rational_between(AlgebraicReal a, AlgebraicReal b) {
  if (compare(a, b) >= 0) throw std::invalid_argument("rational_between requires a < b");
  while (true) {
    BigRational hi_a = a.enclosure().hi, lo_b = b.enclosure().lo;
    if (hi_a < lo_b) return (hi_a + lo_b) / 2;
    if (hi_a == lo_b) {
      // the shared endpoint is strictly between unless one side is exact there
      if (!a.is_rational() && !b.is_rational()) return hi_a;
    }
    a = a.bisect();
    b = b.bisect();
  }
}

}  // namespace polya_pila
