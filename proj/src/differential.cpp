#include "polya_pila/differential.hpp"

#include <algorithm>
#include <string>

#include "polya_pila/errors.hpp"

namespace polya_pila {

namespace {

// Integer bivariate polynomials packed as x^i y^j -> t^(i*stride + j); a ring
// homomorphism that is injective while every y-degree stays below the stride.
IntPoly pack(const BiPoly& p, long stride) {
  IntPoly out;
  for (const auto& [m, c] : p.terms()) {
    auto idx = static_cast<std::size_t>(m.i * stride + m.j);
    if (out.size() <= idx) out.resize(idx + 1);
    out[idx] = c.get_num();
  }
  intpoly::trim(out);
  return out;
}

BiPoly unpack(const IntPoly& t, long stride, const BigRational& scale) {
  BiPoly::Terms terms;
  for (std::size_t e = 0; e < t.size(); ++e) {
    if (t[e] == 0) continue;
    int i = static_cast<int>(static_cast<long>(e) / stride), j = static_cast<int>(static_cast<long>(e) % stride);
    terms.emplace(Monomial{i, j}, BigRational(t[e]) * scale);
  }
  return BiPoly(std::move(terms));
}

BigInt denominator_lcm(const std::vector<BiPoly>& row) {
  BigInt l = 1;
  for (const auto& p : row)
    for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

// The curve's polynomial has positive degree in some variable; eliminate that one.
Axis elimination_axis(const BiPoly& p) { return p.degree_in(Axis::Y) >= 1 ? Axis::Y : Axis::X; }

}  // namespace

TangentOperator TangentOperator::of(const PlaneCurve& c) {
  return {c, partial_derivative(c.defining(), Axis::X), partial_derivative(c.defining(), Axis::Y)};
}

BiPoly apply_L(const TangentOperator& op, const BiPoly& q) {
  return op.py * partial_derivative(q, Axis::X) - op.px * partial_derivative(q, Axis::Y);
}

std::vector<BiPoly> leading_wronskians(const TangentOperator& op, const std::vector<BiPoly>& fs) {
  const std::size_t n = fs.size();
  if (n == 0) return {};
  // rows[i][m] = L^i f_m, cleared to integers by a per-row scalar
  std::vector<std::vector<BiPoly>> rows{fs};
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<BiPoly> next;
    next.reserve(n);
    for (const auto& f : rows.back()) next.push_back(apply_L(op, f));
    rows.push_back(std::move(next));
  }
  std::vector<BigInt> row_scale;
  long total = 0, widest = 0;
  for (auto& row : rows) {
    BigInt s = denominator_lcm(row);
    int deg = 0;
    for (auto& f : row) {
      if (s != 1) f = BigRational(s) * f;
      deg = std::max(deg, f.total_degree());
    }
    row_scale.push_back(s);
    total += deg;
    widest = std::max<long>(widest, deg);
  }
  // every Bareiss intermediate is a minor of degree <= total + widest; products double that
  const long stride = 2 * (total + widest) + 1;

  std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = pack(rows[i][j], stride);

  std::vector<BiPoly> out;
  IntPoly prev{BigInt(1)};
  BigInt scale_prefix = 1;
  for (std::size_t s = 0; s < n; ++s) {
    IntPoly pivot = m[s][s];
    if (pivot.empty()) break;
    scale_prefix *= row_scale[s];
    out.push_back(unpack(pivot, stride, BigRational(BigInt(1), scale_prefix)));
    for (std::size_t i = s + 1; i < n; ++i) {
      for (std::size_t j = s + 1; j < n; ++j) {
        IntPoly num = intpoly::sub(intpoly::mul(pivot, m[i][j]), intpoly::mul(m[i][s], m[s][j]));
        m[i][j] = intpoly::exact_div(num, prev);
      }
    }
    prev = std::move(pivot);
  }
  return out;
}

WronskianSequence wronskians(const TangentOperator& op, int k) {
  const int d = op.curve.degree();
  if (k < 1) throw PreconditionError("wronskians: k must be positive");
  if (k >= d) throw PreconditionError("wronskians: k must be smaller than the curve degree");
  WronskianSequence seq;
  seq.k = k;
  seq.basis = MonomialBasis::of_degree(k);
  std::vector<BiPoly> fs;
  for (const auto& mono : seq.basis.entries) fs.push_back(BiPoly::term(1, mono.i, mono.j));
  auto minors = leading_wronskians(op, fs);
  if (minors.size() < fs.size()) throw PreconditionError("linear dependence on curve");
  const BiPoly& p = op.curve.defining();
  const Axis v = elimination_axis(p);
  for (std::size_t idx = 0; idx < minors.size(); ++idx) {
    const long j = static_cast<long>(idx) + 1;
    if (!resultant_nonzero(p, minors[idx], v)) throw PreconditionError("linear dependence on curve");
    WronskianEntry e;
    e.j = static_cast<int>(j);
    e.degree = minors[idx].total_degree();
    e.degree_bound = j * (k + j * d);
    e.poly = std::move(minors[idx]);
    seq.entries.push_back(std::move(e));
  }
  return seq;
}

RescaledDerivatives rescaled_numerators(const TangentOperator& op, const BiPoly& q, Axis axis, int r) {
  if (r < 0) throw PreconditionError("rescaled_numerators: r must be nonnegative");
  // along x the denominator is P_y and the derivation is P_y d/dx - P_x d/dy; along y the roles swap
  const BiPoly& pm = axis == Axis::X ? op.py : op.px;
  const BiPoly& po = axis == Axis::X ? op.px : op.py;
  const Axis dm = axis, dn = other(axis);
  if (pm.is_zero()) throw PreconditionError(std::string("degenerate axis ") + axis_name(axis));
  auto lift = [&](const BiPoly& f) { return pm * partial_derivative(f, dm) - po * partial_derivative(f, dn); };
  const BiPoly correction = lift(pm);  // Pm * (Pm)_m - Po * (Pm)_o

  RescaledDerivatives out;
  out.axis = axis;
  out.source = q;
  out.numerators.push_back(q);
  const long d = op.curve.degree(), base = std::max(0, q.total_degree());
  out.degree_bounds.push_back(base);
  for (int j = 0; j < r; ++j) {
    const BiPoly& cur = out.numerators.back();
    BiPoly next;
    if (j == 0) {
      next = lift(cur);
    } else {
      next = pm * lift(cur) - BigRational(2 * j - 1) * (cur * correction);
    }
    out.numerators.push_back(std::move(next));
    out.degree_bounds.push_back(base + 2 * d * (j + 1));
  }
  return out;
}

}  // namespace polya_pila
