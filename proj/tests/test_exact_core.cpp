#include <random>

#include "doctest.h"
#include "polya_pila/errors.hpp"
#include "polya_pila/roots.hpp"

using namespace polya_pila;

namespace {

UniPoly poly(std::initializer_list<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

BigRational q(long a, long b = 1) {
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

bool inside(const IsolatingInterval& iv, const BigRational& v) {
  if (iv.exact()) return iv.lo == v;
  return iv.lo < v && v < iv.hi;
}

}  // namespace

TEST_CASE("rational_height") {
  CHECK(rational_height(q(3, 5)) == 5);
  CHECK(rational_height(q(0)) == 1);
  CHECK(rational_height(q(-7, 2)) == 7);
}

TEST_CASE("height symmetry under negation and inversion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    long a = static_cast<long>(rng() % 2001) - 1000;
    long b = static_cast<long>(rng() % 1000) + 1;
    if (a == 0) continue;
    BigRational x = q(a, b);
    CHECK(rational_height(x) == rational_height(-x));
    CHECK(rational_height(x) == rational_height(1 / x));
  }
}

TEST_CASE("rational parse and print round-trip") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-12")) == "-12");
  CHECK(parse_rational(" 0/7 ") == 0);
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("1/-2"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("abc"), PreconditionError);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    BigRational x = q(static_cast<long>(rng() % 100001) - 50000, static_cast<long>(rng() % 999) + 1);
    CHECK(parse_rational(to_string(x)) == x);
    BigRational b = q(static_cast<long>(rng() % 1001) - 500, static_cast<long>(rng() % 97) + 1);
    CHECK((x + b) - b == x);
  }
}

TEST_CASE("sturm_isolate examples") {
  auto r1 = sturm_isolate(poly({-2, 0, 1}), OpenRange::between(0, 2));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].lo * r1[0].lo < 2);
  CHECK(r1[0].hi * r1[0].hi > 2);

  CHECK(sturm_isolate(poly({1, 0, 1}), OpenRange::whole_line()).empty());

  // 6x^2 - 5x + 1 = (3x - 1)(2x - 1)
  auto r3 = sturm_isolate(poly({1, -5, 6}), OpenRange::between(0, 1));
  REQUIRE(r3.size() == 2);
  CHECK(inside(r3[0], q(1, 3)));
  CHECK(inside(r3[1], q(1, 2)));
  CHECK(r3[0].hi <= r3[1].lo);

  CHECK_THROWS_WITH_AS(sturm_isolate(UniPoly(), OpenRange::whole_line()), "identically zero", PreconditionError);
}

TEST_CASE("open range excludes roots on its ends") {
  // x (x - 1) (x - 1/2) on (0, 1)
  UniPoly p = UniPoly::linear_root(0) * UniPoly::linear_root(1) * UniPoly::linear_root(q(1, 2));
  auto s = sturm_isolate(p, OpenRange::between(0, 1));
  REQUIRE(s.size() == 1);
  CHECK(inside(s[0], q(1, 2)));
  auto d = isolate_real_roots(p.primitive_integer(), OpenRange::between(0, 1));
  REQUIRE(d.size() == 1);
  CHECK(inside(d[0], q(1, 2)));
}

TEST_CASE("isolation recovers known rational roots (Sturm and Descartes agree)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    std::vector<BigRational> roots;
    while (static_cast<int>(roots.size()) < m) {
      BigRational r = q(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    UniPoly p = UniPoly::constant(1);
    for (const auto& r : roots) p = p * UniPoly::linear_root(r);
    p = p * poly({1, 0, 1});  // an irreducible quadratic factor adds no real roots
    for (auto iso : {0, 1}) {
      auto ivs = iso == 0 ? sturm_isolate(p, OpenRange::whole_line())
                          : isolate_real_roots(p.primitive_integer(), OpenRange::whole_line());
      REQUIRE(ivs.size() == roots.size());
      for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(inside(ivs[i], roots[i]));
        if (i + 1 < roots.size()) CHECK(ivs[i].hi <= ivs[i + 1].lo);
        if (!ivs[i].exact()) {
          CHECK(p.sign_at(ivs[i].lo) != 0);
          CHECK(p.sign_at(ivs[i].hi) != 0);
        }
      }
    }
  }
}

TEST_CASE("refine against an independent bisection oracle") {
  AlgebraicReal sqrt2(poly({-2, 0, 1}), IsolatingInterval{1, 2});
  AlgebraicReal r = sqrt2.refine(q(1, 8));
  CHECK(r.interval().hi - r.interval().lo <= q(1, 8));
  // oracle: plain rational bisection of x^2 - 2 on [1, 2] down to width 1/1024
  BigRational lo = 1, hi = 2;
  while (hi - lo > q(1, 1024)) {
    BigRational m = (lo + hi) / 2;
    if (m * m < 2) lo = m; else hi = m;
  }
  CHECK(r.interval().lo <= lo);
  CHECK(r.interval().hi >= hi);
  CHECK(r.refine(q(1, 8)).interval() == r.interval());
  CHECK(sqrt2.refine(2).interval() == sqrt2.interval());

  AlgebraicReal half(q(1, 2));
  CHECK(half.refine(q(1, 1000)).interval() == IsolatingInterval{q(1, 2), q(1, 2)});
}

TEST_CASE("sign_at") {
  AlgebraicReal sqrt2(poly({-2, 0, 1}), IsolatingInterval{1, 2});
  CHECK(sign_at(sqrt2, poly({-1, 1})) == 1);
  CHECK(sign_at(sqrt2, poly({-2, 0, 1})) == 0);
  CHECK(sign_at(sqrt2, poly({4, 0, -2})) == 0);
  CHECK(sign_at(sqrt2, poly({-3, 0, 1})) == -1);
  CHECK(sign_at(AlgebraicReal(q(1, 3)), poly({-1, 2})) == -1);
  // close call: 1.4142 vs 1.41421356
  CHECK(sign_at(sqrt2, UniPoly::linear_root(q(14142, 10000))) == 1);
}

TEST_CASE("refinement never changes the represented root") {
  UniPoly p = poly({-2, 0, 1}) * poly({-3, 0, 1});
  auto roots = AlgebraicReal::roots_of(p.primitive_integer());
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) {
    int s2 = sign_at(r, poly({-2, 0, 1}));
    int s3 = sign_at(r, poly({-3, 0, 1}));
    AlgebraicReal fine = r.refine(q(1, 1 << 20));
    CHECK(sign_at(fine, poly({-2, 0, 1})) == s2);
    CHECK(sign_at(fine, poly({-3, 0, 1})) == s3);
    CHECK(compare(fine, r) == 0);
  }
}

TEST_CASE("algebraic comparison and equality via gcd") {
  AlgebraicReal sqrt2(poly({-2, 0, 1}), IsolatingInterval{1, 2});
  // sqrt2 again, described by (x^2 - 2)(x - 5) on a different interval
  AlgebraicReal other(poly({-2, 0, 1}) * poly({-5, 1}), IsolatingInterval{q(13, 10), q(3, 2)});
  CHECK(compare(sqrt2, other) == 0);
  AlgebraicReal sqrt3(poly({-3, 0, 1}), IsolatingInterval{1, 2});
  CHECK(compare(sqrt2, sqrt3) == -1);
  CHECK(compare(sqrt3, sqrt2) == 1);
  CHECK(compare(sqrt2, q(141, 100)) == 1);
  CHECK(compare(sqrt2, q(142, 100)) == -1);
  CHECK(compare(AlgebraicReal(q(1, 2)), q(1, 2)) == 0);
  BigRational mid = rational_between(sqrt2, sqrt3);
  CHECK(compare(sqrt2, mid) < 0);
  CHECK(compare(sqrt3, mid) > 0);
}

TEST_CASE("integer polynomial kernels") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    IntPoly a, b;
    for (int i = 0; i < 40; ++i) a.emplace_back(static_cast<long>(rng() % 2001) - 1000);
    for (int i = 0; i < 30; ++i) b.emplace_back(static_cast<long>(rng() % 2001) - 1000);
    a.back() = 7;
    b.back() = -3;
    IntPoly ab = intpoly::mul(a, b);
    // schoolbook reference
    IntPoly ref(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) ref[i + j] += a[i] * b[j];
    intpoly::trim(ref);
    CHECK(ab == ref);
    CHECK(intpoly::exact_div(ab, b) == a);
  }
}

TEST_CASE("as_rational detects rational roots of higher-degree polynomials") {
  // (3x - 2)(x^2 - 2)(5x + 7)
  IntPoly p = intpoly::mul(intpoly::mul(IntPoly{BigInt(-2), BigInt(3)}, IntPoly{BigInt(-2), BigInt(0), BigInt(1)}),
                           IntPoly{BigInt(7), BigInt(5)});
  auto roots = AlgebraicReal::roots_of(p, OpenRange::whole_line());
  REQUIRE(roots.size() == 4);
  int rational = 0;
  for (const auto& r : roots) {
    if (auto q = r.as_rational()) {
      ++rational;
      CHECK((*q == BigRational(2, 3) || *q == BigRational(-7, 5)));
    }
  }
  CHECK(rational == 2);
}
