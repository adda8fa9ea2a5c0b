#include <cmath>
#include <random>

#include "doctest.h"
#include "polya_pila/differential.hpp"
#include "polya_pila/errors.hpp"
#include "polya_pila/parse.hpp"
#include "polya_pila/roots.hpp"

using namespace polya_pila;

namespace {

BiPoly P(const char* s) { return parse_bipoly(s); }

TangentOperator op_of(const char* s) { return TangentOperator::of(curve_new(P(s))); }

// Laplace expansion along the first row; an oracle independent of the packed Bareiss path.
BiPoly laplace(const std::vector<std::vector<BiPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BiPoly acc;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BiPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BiPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    BiPoly term = m[0][c] * laplace(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

BiPoly random_curve(std::mt19937_64& rng, int d) {
  BiPoly::Terms t;
  for (int e = 0; e <= d; ++e)
    for (int j = 0; j <= e; ++j) {
      long c = static_cast<long>(rng() % 7) - 3;
      if (c != 0) t[Monomial{e - j, j}] = c;
    }
  t[Monomial{d, 0}] = 1;
  t[Monomial{0, d}] = 1 + static_cast<long>(rng() % 2);
  return BiPoly(std::move(t));
}

double eval(const BiPoly& p, double x, double y) {
  double s = 0;
  for (const auto& [m, c] : p.terms()) s += c.get_d() * std::pow(x, m.i) * std::pow(y, m.j);
  return s;
}

// Root of P(x, .) near y0 by Newton iteration.
double track(const BiPoly& p, const BiPoly& py, double x, double y0) {
  double y = y0;
  for (int i = 0; i < 60; ++i) y -= eval(p, x, y) / eval(py, x, y);
  return y;
}

}  // namespace

TEST_CASE("apply_L examples") {
  auto op = op_of("y - x^2");
  CHECK(apply_L(op, P("x")) == P("1"));
  CHECK(apply_L(op, P("y")) == P("2*x"));
  CHECK(apply_L(op, P("17")).is_zero());
}

TEST_CASE("apply_L kills the defining polynomial") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    BiPoly p = random_curve(rng, 2 + t % 5);
    auto op = TangentOperator{curve_unchecked(p), partial_derivative(p, Axis::X), partial_derivative(p, Axis::Y)};
    CHECK(apply_L(op, p).is_zero());
  }
}

TEST_CASE("wronskian examples") {
  auto w = wronskians(op_of("y - x^2"), 1);
  REQUIRE(w.entries.size() == 3);
  CHECK(w.entries[0].poly == P("1"));
  CHECK(w.entries[1].poly == P("1"));
  CHECK(w.entries[2].poly == P("2"));
  auto c = wronskians(op_of("x^2 + y^2 - 1"), 1);
  REQUIRE(c.entries.size() == 3);
  CHECK(c.entries[0].poly == P("1"));
  CHECK(c.entries[1].poly == P("2*y"));
  CHECK(c.entries[2].poly == P("-8*x^2 - 8*y^2"));
  CHECK(c.entries[2].degree_bound == 3 * (1 + 3 * 2));
}

TEST_CASE("wronskians enforce k < d") {
  CHECK_THROWS_AS(wronskians(op_of("y - x^2"), 2), PreconditionError);
  CHECK_THROWS_AS(wronskians(op_of("x - y"), 1), PreconditionError);
}

TEST_CASE("packed Bareiss minors match Laplace expansion") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 6; ++t) {
    BiPoly p = random_curve(rng, 3 + t % 3);
    auto op = TangentOperator::of(curve_unchecked(p));
    std::vector<BiPoly> fs;
    for (const auto& m : MonomialBasis::of_degree(1).entries) fs.push_back(BiPoly::term(1, m.i, m.j));
    fs.push_back(P("x^2 - 3*x*y"));
    auto minors = leading_wronskians(op, fs);
    REQUIRE(minors.size() == fs.size());
    std::vector<std::vector<BiPoly>> rows{fs};
    for (std::size_t i = 1; i < fs.size(); ++i) {
      std::vector<BiPoly> next;
      for (const auto& f : rows.back()) next.push_back(apply_L(op, f));
      rows.push_back(next);
    }
    for (std::size_t j = 1; j <= fs.size(); ++j) {
      std::vector<std::vector<BiPoly>> sub;
      for (std::size_t r = 0; r < j; ++r) sub.emplace_back(rows[r].begin(), rows[r].begin() + static_cast<long>(j));
      CHECK(minors[j - 1] == laplace(sub));
    }
  }
}

TEST_CASE("wronskian of a family containing P vanishes on the curve") {
  for (const char* s : {"y - x^2", "x^2 + y^2 - 1", "x^3 + y^3 - 1"}) {
    BiPoly p = P(s);
    auto op = TangentOperator::of(curve_new(p));
    std::vector<BiPoly> fs;
    for (const auto& m : MonomialBasis::of_degree(1).entries) fs.push_back(BiPoly::term(1, m.i, m.j));
    fs.push_back(p);
    auto minors = leading_wronskians(op, fs);
    if (minors.size() == fs.size()) CHECK(resultant(p, minors.back(), Axis::Y).is_zero());
  }
}

TEST_CASE("degree bounds hold on random curves") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 12; ++t) {
    int d = 2 + t % 4;
    BiPoly p = random_curve(rng, d);
    auto op = TangentOperator::of(curve_unchecked(p));
    for (int k = 1; k < d && k <= 2; ++k) {
      auto w = wronskians(op, k);
      for (const auto& e : w.entries) CHECK(e.degree <= e.degree_bound);
    }
    for (Axis a : {Axis::X, Axis::Y}) {
      auto r = rescaled_numerators(op, a == Axis::X ? P("y") : P("x"), a, 4);
      for (std::size_t j = 0; j < r.numerators.size(); ++j)
        CHECK(r.numerators[j].total_degree() <= r.degree_bounds[j]);
    }
  }
}

TEST_CASE("rescaled numerator examples") {
  auto circle = op_of("x^2 + y^2 - 1");
  auto r = rescaled_numerators(circle, P("y"), Axis::X, 2);
  REQUIRE(r.numerators.size() == 3);
  CHECK(r.numerators[0] == P("y"));
  CHECK(r.numerators[1] == P("-2*x"));
  CHECK(r.numerators[2] == P("-8*x^2 - 8*y^2"));
  CHECK(rescaled_numerators(circle, P("x*y"), Axis::Y, 0).numerators.size() == 1);
  auto parabola = rescaled_numerators(op_of("y - x^2"), P("y"), Axis::X, 2);
  CHECK(parabola.numerators[1] == P("2*x"));
  CHECK(parabola.numerators[2] == P("2"));
  CHECK_THROWS_WITH_AS(rescaled_numerators(op_of("x^2 - 2"), P("y"), Axis::X, 1), "degenerate axis x",
                       PreconditionError);
}

TEST_CASE("rescaled numerators match finite differences along the curve") {
  // the curve through (1, 1): x^2 + x y + y^3 - 3 has mixed second partials, so every term matters
  BiPoly p = P("x^2 + x*y + y^3 - 3");
  auto op = TangentOperator::of(curve_new(p));
  auto rx = rescaled_numerators(op, P("y"), Axis::X, 3);
  auto ry = rescaled_numerators(op, P("x"), Axis::Y, 3);
  const double h = 1e-3;
  for (double x0 : {0.6, 1.0, 1.3}) {
    double y0 = track(p, op.py, x0, 1.0);
    double ym = track(p, op.py, x0 - h, y0), yp = track(p, op.py, x0 + h, y0);
    double ym2 = track(p, op.py, x0 - 2 * h, y0), yp2 = track(p, op.py, x0 + 2 * h, y0);
    double py = eval(op.py, x0, y0);
    double d1 = (yp - ym) / (2 * h), d2 = (yp - 2 * y0 + ym) / (h * h);
    double d3 = (yp2 - 2 * yp + 2 * ym - ym2) / (2 * h * h * h);
    CHECK(eval(rx.numerators[1], x0, y0) / py == doctest::Approx(d1).epsilon(1e-5));
    CHECK(eval(rx.numerators[2], x0, y0) / std::pow(py, 3) == doctest::Approx(d2).epsilon(1e-4));
    CHECK(eval(rx.numerators[3], x0, y0) / std::pow(py, 5) == doctest::Approx(d3).epsilon(1e-2));
    // along y: x as a function of y, dx/dy = 1 / (dy/dx)
    double px = eval(op.px, x0, y0);
    CHECK(eval(ry.numerators[1], x0, y0) / px == doctest::Approx(1 / d1).epsilon(1e-5));
    double x2 = -d2 / std::pow(d1, 3);
    CHECK(eval(ry.numerators[2], x0, y0) / std::pow(px, 3) == doctest::Approx(x2).epsilon(1e-4));
  }
}
