#include "polya_pila/interpolation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "polya_pila/errors.hpp"

namespace polya_pila {

namespace {

using Row = std::vector<BigInt>;

// Row of monomial values x^i y^j (basis order) scaled by den(x)^k den(y)^k.
Row evaluation_row(const RationalPoint& pt, const MonomialBasis& basis) {
  const int k = basis.k;
  auto powers = [k](const BigInt& v) {
    std::vector<BigInt> out(static_cast<std::size_t>(k) + 1);
    out[0] = 1;
    for (int e = 1; e <= k; ++e) out[static_cast<std::size_t>(e)] = out[static_cast<std::size_t>(e) - 1] * v;
    return out;
  };
  auto nx = powers(pt.x.get_num()), dx = powers(pt.x.get_den());
  auto ny = powers(pt.y.get_num()), dy = powers(pt.y.get_den());
  Row row;
  row.reserve(basis.entries.size());
  for (const auto& m : basis.entries) {
    auto i = static_cast<std::size_t>(m.i), j = static_cast<std::size_t>(m.j);
    row.push_back(nx[i] * dx[static_cast<std::size_t>(k) - i] * ny[j] * dy[static_cast<std::size_t>(k) - j]);
  }
  return row;
}

// Fraction-free row echelon form in place; returns the pivot columns.
std::vector<std::size_t> echelon(std::vector<Row>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t i = r;
    while (i < m.size() && m[i][c] == 0) ++i;
    if (i == m.size()) continue;
    std::swap(m[i], m[r]);
    const BigInt& p = m[r][c];
    for (std::size_t s = r + 1; s < m.size(); ++s) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = p * m[s][j] - m[s][c] * m[r][j];
        if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t())) throw std::logic_error("fit_curve: inexact elimination");
        mpz_divexact(m[s][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[s][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

CertificateError violation(const ArcDecomposition& dec, const BiPoly& q, int arc, int count, long bound) {
  const Arc& a = dec.arcs[static_cast<std::size_t>(arc)];
  nlohmann::json bundle{{"curve", dec.curve.defining().to_string()},
                        {"k", dec.k},
                        {"r", dec.r},
                        {"q", q.to_string()},
                        {"arc", arc},
                        {"arc_start", {a.start.x.to_string(), a.start.y.to_string()}},
                        {"arc_end", {a.end.x.to_string(), a.end.y.to_string()}},
                        {"count", count},
                        {"bound", bound}};
  return CertificateError("certificate violated", bundle.dump());
}

}  // namespace

std::optional<AuxiliaryCurve> fit_curve(const std::vector<RationalPoint>& points, int k) {
  if (k < 1) throw PreconditionError("fit_curve: k must be positive");
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw PreconditionError("duplicate points");
  }
  const MonomialBasis basis = MonomialBasis::of_degree(k);
  const std::size_t cols = basis.entries.size();
  std::vector<Row> m;
  m.reserve(points.size());
  for (const auto& pt : points) m.push_back(evaluation_row(pt, basis));
  auto pivots = echelon(m, cols);
  if (pivots.size() == cols) return std::nullopt;

  std::size_t free = 0;
  while (free < pivots.size() && pivots[free] == free) ++free;
  std::vector<BigRational> x(cols);
  x[free] = 1;
  for (std::size_t t = pivots.size(); t-- > 0;) {
    const std::size_t c = pivots[t];
    if (c > free) continue;  // later pivots only involve zero unknowns
    BigRational acc = 0;
    for (std::size_t j = c + 1; j < cols; ++j)
      if (x[j] != 0) acc += BigRational(m[t][j]) * x[j];
    x[c] = -acc / BigRational(m[t][c]);
  }
  BiPoly::Terms terms;
  for (std::size_t j = 0; j < cols; ++j)
    if (x[j] != 0) terms.emplace(basis.entries[j], x[j]);
  BiPoly poly = BiPoly(std::move(terms)).primitive();
  for (const auto& pt : points)
    if (poly.evaluate(pt.x, pt.y) != 0) throw std::logic_error("fit_curve: kernel vector does not vanish");
  return AuxiliaryCurve{k, std::move(poly), points};
}

Covering cover_arc_points(const std::vector<RationalPoint>& points, int k) {
  if (k < 1) throw PreconditionError("cover_arc_points: k must be positive");
  Covering out;
  const std::size_t n = points.size();
  const auto safe = static_cast<std::size_t>(mu(k) - 1);  // fewer points than monomials always fit
  auto fits = [&](std::size_t from, std::size_t len) {
    std::vector<RationalPoint> batch(points.begin() + static_cast<std::ptrdiff_t>(from),
                                     points.begin() + static_cast<std::ptrdiff_t>(from + len));
    return fit_curve(batch, k);
  };
  std::size_t i = 0;
  while (i < n) {
    const std::size_t rest = n - i;
    std::size_t good = std::min(safe, rest), bad = rest + 1;
    // grow geometrically, then bisect between the last success and the first failure
    for (std::size_t len = std::max<std::size_t>(good, 1) * 2; len < bad; len *= 2) {
      std::size_t l = std::min(len, rest);
      if (fits(i, l)) {
        good = l;
        if (l == rest) break;
      } else {
        bad = l;
      }
    }
    while (bad - good > 1 && good < rest) {
      std::size_t mid = good + (bad - good) / 2;
      if (fits(i, mid)) good = mid;
      else bad = mid;
    }
    out.curves.push_back(*fits(i, good));
    i += good;
  }
  out.N = static_cast<long>(out.curves.size());
  return out;
}

ArcIncidence arc_incidence(const ArcDecomposition& dec, const BiPoly& q) {
  ArcIncidence out;
  out.per_arc.assign(dec.arcs.size(), 0);
  if (q.is_zero()) throw PreconditionError("common component");
  if (q.is_constant()) return out;
  for (const auto& pt : common_zeros(dec.curve.defining(), q, Box::unit())) {
    ++out.in_box;
    int a = locate_on_arcs(dec, pt);
    if (a >= 0) ++out.per_arc[static_cast<std::size_t>(a)];
    else ++out.at_split_points;
  }
  return out;
}

int count_intersections_on_arc(const ArcDecomposition& dec, int arc, const BiPoly& q) {
  if (arc < 0 || arc >= static_cast<int>(dec.arcs.size())) throw PreconditionError("arc index out of range");
  return arc_incidence(dec, q).per_arc[static_cast<std::size_t>(arc)];
}

std::vector<ChebyshevCertificate> chebyshev_certify(const ArcDecomposition& dec, const BiPoly& q) {
  if (q.total_degree() > dec.k) throw PreconditionError("chebyshev_certify: deg q exceeds k");
  const long bound = mu(dec.k);
  auto inc = arc_incidence(dec, q);
  std::vector<ChebyshevCertificate> out;
  for (std::size_t a = 0; a < dec.arcs.size(); ++a) {
    if (inc.per_arc[a] >= bound) throw violation(dec, q, static_cast<int>(a), inc.per_arc[a], bound);
    out.push_back({static_cast<int>(a), dec.k, q, inc.per_arc[a], bound});
  }
  return out;
}

bool bezout_global_check(const PlaneCurve& curve, const BiPoly& q) {
  if (q.is_zero()) throw PreconditionError("common component");
  if (q.is_constant()) return true;
  const BiPoly& p = curve.defining();
  const long n = static_cast<long>(common_zeros(p, q, global_box(p, q)).size());
  return n <= static_cast<long>(curve.degree()) * q.total_degree();
}

}  // namespace polya_pila
