#include "polya_pila/curve.hpp"

#include <algorithm>
#include <random>
#include <iterator>
#include <optional>
#include <set>

#include "polya_pila/errors.hpp"
#include "polya_pila/factor.hpp"

namespace polya_pila {

namespace {

// P(a t + b, c t + e) as a polynomial in t.
UniPoly restrict_to_line(const BiPoly& p, const BigRational& a, const BigRational& b, const BigRational& c,
                         const BigRational& e) {
  const int d = std::max(0, p.total_degree());
  UniPoly lx(std::vector<BigRational>{b, a}), ly(std::vector<BigRational>{e, c});
  std::vector<UniPoly> px{UniPoly::constant(1)}, py{UniPoly::constant(1)};
  for (int i = 1; i <= d; ++i) {
    px.push_back(px.back() * lx);
    py.push_back(py.back() * ly);
  }
  UniPoly out;
  for (const auto& [m, coef] : p.terms())
    out = out + coef * (px[static_cast<std::size_t>(m.i)] * py[static_cast<std::size_t>(m.j)]);
  return out;
}

// Nontrivial partial sums of the factor degrees: the possible degrees of a factor of the curve.
std::set<int> split_degrees(const std::vector<IntPoly>& factors, int d) {
  std::set<int> sums{0};
  for (const auto& f : factors) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + intpoly::degree(f));
    sums = std::move(next);
  }
  sums.erase(0);
  sums.erase(d);
  return sums;
}

bool looks_reducible(const BiPoly& p, int d) {
  std::mt19937_64 rng(0x5eed1234ULL);
  auto small = [&rng]() {
    long num = static_cast<long>(rng() % 11) - 5;
    long den = static_cast<long>(rng() % 3) + 1;
    BigRational q(num, den);
    q.canonicalize();
    return q;
  };
  std::optional<std::set<int>> common;
  int used = 0;
  for (int attempt = 0; attempt < 64 && used < 8; ++attempt) {
    BigRational a = small(), b = small(), c = small(), e = small();
    UniPoly f = restrict_to_line(p, a, b, c, e);
    if (f.degree() != d) continue;
    IntPoly fi = f.primitive_integer();
    if (intpoly::degree(intpoly::square_free(fi)) != d) continue;  // tangent line
    ++used;
    auto factors = factor_over_q(fi);
    if (factors.size() == 1) return false;  // an irreducible restriction of full degree proves irreducibility
    auto sums = split_degrees(factors, d);
    if (!common) {
      common = std::move(sums);
    } else {
      std::set<int> keep;
      std::set_intersection(common->begin(), common->end(), sums.begin(), sums.end(),
                            std::inserter(keep, keep.begin()));
      common = std::move(keep);
    }
    if (common->empty()) return false;
  }
  return common && !common->empty();
}

// Nonzero univariate resultant of the specializations, with both leading coefficients surviving.
bool specialized_resultant_nonzero(const std::vector<UniPoly>& pc, const std::vector<UniPoly>& qc,
                                   const BigRational& w) {
  if (pc.back().evaluate(w) == 0 || qc.back().evaluate(w) == 0) return false;
  std::vector<BigRational> ps, qs;
  for (const auto& c : pc) ps.push_back(c.evaluate(w));
  for (const auto& c : qc) qs.push_back(c.evaluate(w));
  UniPoly g = gcd(UniPoly(std::move(ps)), UniPoly(std::move(qs)));
  return g.degree() == 0;
}

}  // namespace

bool resultant_nonzero(const BiPoly& p, const BiPoly& q, Axis eliminate) {
  if (p.is_zero() || q.is_zero()) return false;
  if (p.degree_in(eliminate) == 0 || q.degree_in(eliminate) == 0) return true;
  auto pc = p.coefficients_in(eliminate);
  auto qc = q.coefficients_in(eliminate);
  static const long points[][2] = {{0, 1}, {1, 1}, {-1, 1}, {1, 2}, {2, 1}, {-3, 2}, {5, 3}, {-7, 4}};
  for (const auto& pt : points) {
    if (specialized_resultant_nonzero(pc, qc, BigRational(pt[0], pt[1]))) return true;
  }
  return !resultant(p, q, eliminate).is_zero();
}

PlaneCurve curve_unchecked(const BiPoly& p) {
  if (p.total_degree() <= 0) throw PreconditionError("degree must be positive");
  PlaneCurve c;
  c.p_ = p;
  c.d_ = p.total_degree();
  return c;
}

PlaneCurve curve_new(const BiPoly& p) {
  PlaneCurve c = curve_unchecked(p);
  for (Axis v : {Axis::X, Axis::Y}) {
    if (p.degree_in(v) < 1) continue;
    if (!resultant_nonzero(p, partial_derivative(p, v), v)) throw PreconditionError("not square-free");
  }
  if (c.d_ > 1 && looks_reducible(p, c.d_)) throw PreconditionError("reducible");
  return c;
}

bool vanishes_on_curve(const PlaneCurve& c, const BiPoly& q) {
  return q.is_zero() || divide_exact(q, c.defining()).has_value();
}

}  // namespace polya_pila
