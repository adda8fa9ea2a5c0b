#include "polya_pila/bipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polya_pila {

BiPoly::BiPoly(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

BiPoly BiPoly::constant(const BigRational& c) { return term(c, 0, 0); }
BiPoly BiPoly::x() { return term(1, 1, 0); }
BiPoly BiPoly::y() { return term(1, 0, 1); }

BiPoly BiPoly::term(const BigRational& c, int i, int j) {
  Terms t;
  if (c != 0) t.emplace(Monomial{i, j}, c);
  return BiPoly(std::move(t));
}

BiPoly BiPoly::from_uni(const UniPoly& p, Axis var) {
  Terms t;
  for (int e = 0; e <= p.degree(); ++e) {
    const BigRational& c = p.coefficients()[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    t.emplace(var == Axis::X ? Monomial{e, 0} : Monomial{0, e}, c);
  }
  return BiPoly(std::move(t));
}

int BiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

int BiPoly::degree_in(Axis a) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, a == Axis::X ? m.i : m.j);
  return d;
}

BigRational BiPoly::coefficient(int i, int j) const {
  auto it = terms_.find(Monomial{i, j});
  return it == terms_.end() ? BigRational(0) : it->second;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly::Terms t = a.terms_;
  for (const auto& [m, c] : b.terms_) {
    auto [it, inserted] = t.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
  BiPoly out;
  out.terms_ = std::move(t);
  return out;
}

BiPoly BiPoly::operator-() const {
  BiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly::Terms t;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) t[Monomial{ma.i + mb.i, ma.j + mb.j}] += ca * cb;
  return BiPoly(std::move(t));
}

BiPoly operator*(const BigRational& s, const BiPoly& a) {
  if (s == 0) return {};
  BiPoly out = a;
  for (auto& [m, c] : out.terms_) c *= s;
  return out;
}

BiPoly BiPoly::pow(int e) const {
  BiPoly result = constant(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

BigRational BiPoly::evaluate(const BigRational& xv, const BigRational& yv) const {
  BigRational acc = 0;
  for (const auto& [m, c] : terms_) {
    BigRational t = c;
    for (int k = 0; k < m.i; ++k) t *= xv;
    for (int k = 0; k < m.j; ++k) t *= yv;
    acc += t;
  }
  return acc;
}

BiPoly BiPoly::primitive() const {
  if (terms_.empty()) return *this;
  BigInt l = 1;
  for (const auto& [m, c] : terms_) l = lcm_of_denominators_step(l, c);
  BigInt g = 0;
  for (const auto& [m, c] : terms_) {
    BigRational s = c * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num().get_mpz_t());
  }
  BigRational factor(l, g);
  factor.canonicalize();
  if (terms_.rbegin()->second < 0) factor = -factor;
  return factor * *this;
}

bool BiPoly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

std::vector<UniPoly> BiPoly::coefficients_in(Axis main) const {
  int dm = degree_in(main);
  std::vector<std::vector<BigRational>> raw(static_cast<std::size_t>(std::max(dm + 1, 0)));
  int dother = degree_in(other(main));
  for (auto& r : raw) r.assign(static_cast<std::size_t>(std::max(dother + 1, 0)), BigRational(0));
  for (const auto& [m, c] : terms_) {
    int e_main = main == Axis::X ? m.i : m.j;
    int e_other = main == Axis::X ? m.j : m.i;
    raw[static_cast<std::size_t>(e_main)][static_cast<std::size_t>(e_other)] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

std::vector<IntPoly> BiPoly::integer_coefficients_in(Axis main) const {
  BiPoly prim = primitive();
  int dm = prim.degree_in(main);
  int dother = prim.degree_in(other(main));
  std::vector<IntPoly> out(static_cast<std::size_t>(std::max(dm + 1, 0)), IntPoly(static_cast<std::size_t>(dother + 1)));
  for (const auto& [m, c] : prim.terms_) {
    int e_main = main == Axis::X ? m.i : m.j;
    int e_other = main == Axis::X ? m.j : m.i;
    out[static_cast<std::size_t>(e_main)][static_cast<std::size_t>(e_other)] = c.get_num();
  }
  for (auto& p : out) intpoly::trim(p);
  return out;
}

BiPoly BiPoly::swapped() const {
  Terms t;
  for (const auto& [m, c] : terms_) t.emplace(Monomial{m.j, m.i}, c);
  return BiPoly(std::move(t));
}

BiPoly BiPoly::shear_x(const BigRational& s) const {
  if (s == 0) return *this;
  // (x + s y)^i = sum_k C(i,k) x^(i-k) s^k y^k
  Terms t;
  for (const auto& [m, c] : terms_) {
    BigInt binom = 1;
    BigRational spow = 1;
    for (int k = 0; k <= m.i; ++k) {
      t[Monomial{m.i - k, m.j + k}] += c * BigRational(binom) * spow;
      binom = binom * (m.i - k) / (k + 1);
      spow *= s;
    }
  }
  return BiPoly(std::move(t));
}

BiPoly BiPoly::negate(Axis a) const {
  Terms t;
  for (const auto& [m, c] : terms_) {
    int e = a == Axis::X ? m.i : m.j;
    t.emplace(m, e % 2 ? BigRational(-c) : c);
  }
  return BiPoly(std::move(t));
}

BiPoly BiPoly::invert(Axis a) const {
  int D = degree_in(a);
  Terms t;
  for (const auto& [m, c] : terms_) {
    Monomial n = a == Axis::X ? Monomial{D - m.i, m.j} : Monomial{m.i, D - m.j};
    t.emplace(n, c);
  }
  return BiPoly(std::move(t));
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = a == 1 && m.degree() > 0;
    if (!unit) os << polya_pila::to_string(a);
    bool need_star = !unit;
    auto var = [&](char v, int e) {
      if (e == 0) return;
      if (need_star) os << "*";
      os << v;
      if (e > 1) os << "^" << e;
      need_star = true;
    };
    var('x', m.i);
    var('y', m.j);
  }
  return os.str();
}

long mu(int k) { return static_cast<long>(k + 1) * (k + 2) / 2; }

MonomialBasis MonomialBasis::of_degree(int k) {
  MonomialBasis b;
  b.k = k;
  for (int t = 0; t <= k; ++t)
    for (int j = 0; j <= t; ++j) b.entries.push_back(Monomial{t - j, j});
  return b;
}

BiPoly partial_derivative(const BiPoly& p, Axis axis) {
  BiPoly::Terms t;
  for (const auto& [m, c] : p.terms()) {
    int e = axis == Axis::X ? m.i : m.j;
    if (e == 0) continue;
    Monomial n = axis == Axis::X ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
    t.emplace(n, c * e);
  }
  return BiPoly(std::move(t));
}

UniPoly specialize(const BiPoly& p, Axis axis, const BigRational& value) {
  int d = p.degree_in(other(axis));
  std::vector<BigRational> v(static_cast<std::size_t>(std::max(d + 1, 0)));
  for (const auto& [m, c] : p.terms()) {
    int e_fixed = axis == Axis::X ? m.i : m.j;
    int e_free = axis == Axis::X ? m.j : m.i;
    BigRational t = c;
    for (int k = 0; k < e_fixed; ++k) t *= value;
    v[static_cast<std::size_t>(e_free)] += t;
  }
  return UniPoly(std::move(v));
}

IntPoly bareiss_determinant(std::vector<std::vector<IntPoly>> m) {
  std::size_t n = m.size();
  if (n == 0) return IntPoly{BigInt(1)};
  bool negate = false;
  IntPoly prev{BigInt(1)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPoly num = intpoly::sub(intpoly::mul(m[i][j], m[k][k]), intpoly::mul(m[i][k], m[k][j]));
        m[i][j] = intpoly::exact_div(num, prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  IntPoly det = m[n - 1][n - 1];
  if (negate) det = intpoly::scale(det, BigInt(-1));
  return det;
}

namespace {

int deg_main(const std::vector<IntPoly>& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)].empty()) --d;
  return d;
}

// Row of the Sylvester matrix: coefficients of main^shift * p, columns ordered by
// decreasing power from `top` down to 0.
std::vector<IntPoly> sylvester_row(const std::vector<IntPoly>& p, int dp, int shift, int top) {
  std::vector<IntPoly> row(static_cast<std::size_t>(top + 1));
  for (int e = 0; e <= dp; ++e) {
    int power = e + shift;
    row[static_cast<std::size_t>(top - power)] = p[static_cast<std::size_t>(e)];
  }
  return row;
}

}  // namespace

IntPoly resultant_int(const std::vector<IntPoly>& p, const std::vector<IntPoly>& q) {
  int m = deg_main(p), n = deg_main(q);
  if (m < 0 || n < 0) return {};
  int size = m + n;
  if (size == 0) return IntPoly{BigInt(1)};
  std::vector<std::vector<IntPoly>> mat;
  for (int s = n - 1; s >= 0; --s) mat.push_back(sylvester_row(p, m, s, size - 1));
  for (int s = m - 1; s >= 0; --s) mat.push_back(sylvester_row(q, n, s, size - 1));
  return bareiss_determinant(std::move(mat));
}

std::vector<IntPoly> subresultant_int(const std::vector<IntPoly>& p, const std::vector<IntPoly>& q, int j) {
  int m = deg_main(p), n = deg_main(q);
  if (j == 0) return {resultant_int(p, q)};
  if (j > std::min(m, n)) throw std::invalid_argument("subresultant index too large");
  int cols = m + n - j;  // powers cols-1 .. 0
  std::vector<std::vector<IntPoly>> rows;
  for (int s = n - j - 1; s >= 0; --s) rows.push_back(sylvester_row(p, m, s, cols - 1));
  for (int s = m - j - 1; s >= 0; --s) rows.push_back(sylvester_row(q, n, s, cols - 1));
  int size = m + n - 2 * j;
  std::vector<IntPoly> out(static_cast<std::size_t>(j + 1));
  for (int i = 0; i <= j; ++i) {
    std::vector<std::vector<IntPoly>> mat;
    for (const auto& r : rows) {
      std::vector<IntPoly> sel(r.begin(), r.begin() + (size - 1));
      sel.push_back(r[static_cast<std::size_t>(cols - 1 - i)]);
      mat.push_back(std::move(sel));
    }
    out[static_cast<std::size_t>(i)] = bareiss_determinant(std::move(mat));
  }
  return out;
}

UniPoly resultant(const BiPoly& p, const BiPoly& q, Axis eliminate) {
  if (p.is_zero() || q.is_zero()) return {};
  // integer_coefficients_in scales by a positive constant; undo it to keep the rational resultant exact
  auto scale_of = [](const BiPoly& f) -> BigRational {
    BiPoly prim = f.primitive();
    const auto& [m, c] = *f.terms().begin();
    return prim.coefficient(m.i, m.j) / c;  // prim = s * f
  };
  BigRational sp = scale_of(p), sq = scale_of(q);
  auto ip = p.integer_coefficients_in(eliminate);
  auto iq = q.integer_coefficients_in(eliminate);
  int m = deg_main(ip), n = deg_main(iq);
  UniPoly r(resultant_int(ip, iq));
  // Res(sp p, sq q) = sp^n sq^m Res(p, q)
  BigRational f = 1;
  for (int k = 0; k < n; ++k) f *= sp;
  for (int k = 0; k < m; ++k) f *= sq;
  return (1 / f) * r;
}

std::optional<BiPoly> divide_exact(const BiPoly& p, const BiPoly& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  auto pc = p.coefficients_in(Axis::Y);
  auto dc = divisor.coefficients_in(Axis::Y);
  int dd = static_cast<int>(dc.size()) - 1;
  BiPoly quotient;
  while (!pc.empty()) {
    while (!pc.empty() && pc.back().is_zero()) pc.pop_back();
    if (pc.empty()) break;
    int dp = static_cast<int>(pc.size()) - 1;
    if (dp < dd) return std::nullopt;
    auto [qc, rem] = pc.back().divmod(dc.back());
    if (!rem.is_zero()) return std::nullopt;
    int shift = dp - dd;
    quotient = quotient + BiPoly::from_uni(qc, Axis::X) * BiPoly::term(1, 0, shift);
    for (int e = 0; e <= dd; ++e) pc[static_cast<std::size_t>(e + shift)] = pc[static_cast<std::size_t>(e + shift)] - qc * dc[static_cast<std::size_t>(e)];
  }
  return quotient;
}

}  // namespace polya_pila
