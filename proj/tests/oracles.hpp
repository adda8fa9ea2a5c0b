#pragma once

// Reference computations used by the tests and the acceptance suite. They share no code
// with the library's enumeration paths beyond exact polynomial evaluation.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polya_pila/curve.hpp"
#include "polya_pila/errors.hpp"
#include "polya_pila/parse.hpp"
#include "polya_pila/points.hpp"

namespace oracle {

using namespace polya_pila;

struct Frac {
  long a, b;
};

inline std::vector<Frac> fractions(long H) {
  std::vector<Frac> out;
  for (long b = 1; b <= H; ++b)
    for (long a = -H; a <= H; ++a)
      if (std::gcd(a, b) == 1) out.push_back({a, b});
  return out;
}

// Every pair of fractions of height <= H, tested exactly. A modular evaluation screens out
// nonzero values first (a nonzero residue proves a nonzero value).
inline std::vector<std::pair<BigRational, BigRational>> points_by_pairs(const BiPoly& p0, long H) {
  const BiPoly p = p0.primitive();
  constexpr std::uint64_t prime = 2305843009213693951ULL;  // 2^61 - 1
  auto mod = [](long v) {
    long r = v % static_cast<long>(prime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(prime) : r);
  };
  auto mul = [](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % prime);
  };
  const int dx = std::max(0, p.degree_in(Axis::X)), dy = std::max(0, p.degree_in(Axis::Y));
  struct Term {
    int i, j;
    std::uint64_t c;
  };
  std::vector<Term> terms;
  for (const auto& [m, c] : p.terms()) {
    BigInt r;
    BigInt num = c.get_num();
    mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), prime);
    terms.push_back({m.i, m.j, r.get_ui()});
  }
  auto powers = [&](long v, int n) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n) + 1, 1);
    for (int e = 1; e <= n; ++e) out[static_cast<std::size_t>(e)] = mul(out[static_cast<std::size_t>(e) - 1], mod(v));
    return out;
  };
  auto fr = fractions(H);
  std::vector<std::vector<std::uint64_t>> xa, xb, ya, yb;
  for (const auto& f : fr) {
    xa.push_back(powers(f.a, dx));
    xb.push_back(powers(f.b, dx));
    ya.push_back(powers(f.a, dy));
    yb.push_back(powers(f.b, dy));
  }
  std::vector<std::pair<BigRational, BigRational>> out;
  for (std::size_t s = 0; s < fr.size(); ++s)
    for (std::size_t t = 0; t < fr.size(); ++t) {
      std::uint64_t acc = 0;
      for (const auto& term : terms) {
        std::uint64_t v = mul(term.c, mul(xa[s][static_cast<std::size_t>(term.i)], xb[s][static_cast<std::size_t>(dx - term.i)]));
        v = mul(v, mul(ya[t][static_cast<std::size_t>(term.j)], yb[t][static_cast<std::size_t>(dy - term.j)]));
        acc = (acc + v) % prime;
      }
      if (acc != 0) continue;
      BigRational x(fr[s].a, fr[s].b), y(fr[t].a, fr[t].b);
      if (p.evaluate(x, y) == 0) out.emplace_back(x, y);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline long count_by_pairs(const BiPoly& p, long H) { return static_cast<long>(points_by_pairs(p, H).size()); }

// Same set by the rational root theorem: on each line x = a/b the cleared polynomial in y is
// tested at every u/v with u | constant term and v | leading coefficient, |u|, v <= H.
inline std::vector<std::pair<BigRational, BigRational>> points_by_divisors(const BiPoly& p0, long H) {
  const BiPoly p = p0.primitive();
  const int dx = std::max(0, p.degree_in(Axis::X)), dy = std::max(0, p.degree_in(Axis::Y));
  std::vector<std::pair<BigRational, BigRational>> out;
  auto fr = fractions(H);
  for (const auto& x : fr) {
    // f[j] = b^dx * coefficient of y^j at x = a/b
    std::vector<BigInt> f(static_cast<std::size_t>(dy) + 1, 0);
    for (const auto& [m, c] : p.terms()) {
      BigInt t = c.get_num(), pa, pb;
      mpz_pow_ui(pa.get_mpz_t(), BigInt(x.a).get_mpz_t(), static_cast<unsigned long>(m.i));
      mpz_pow_ui(pb.get_mpz_t(), BigInt(x.b).get_mpz_t(), static_cast<unsigned long>(dx - m.i));
      f[static_cast<std::size_t>(m.j)] += t * pa * pb;
    }
    const BigRational xv(x.a, x.b);
    auto value = [&](long u, long v) {
      BigInt acc = 0, up = 1;
      std::vector<BigInt> vp(f.size(), 1);
      for (std::size_t j = 1; j < f.size(); ++j) vp[j] = vp[j - 1] * v;
      for (std::size_t j = 0; j < f.size(); ++j) {
        acc += f[j] * up * vp[f.size() - 1 - j];
        up *= u;
      }
      return acc;
    };
    std::size_t lo = 0;
    while (lo < f.size() && f[lo] == 0) ++lo;
    if (lo == f.size()) {
      for (const auto& y : fr) out.emplace_back(xv, BigRational(y.a, y.b));
      continue;
    }
    if (lo > 0) out.emplace_back(xv, BigRational(0));
    std::size_t hi = f.size() - 1;
    while (f[hi] == 0) --hi;
    const BigInt c0 = abs(f[lo]), lc = abs(f[hi]);
    if (hi == lo) continue;
    for (long v = 1; v <= H; ++v) {
      if (!mpz_divisible_ui_p(lc.get_mpz_t(), static_cast<unsigned long>(v))) continue;
      for (long u = 1; u <= H; ++u) {
        if (std::gcd(u, v) != 1 || !mpz_divisible_ui_p(c0.get_mpz_t(), static_cast<unsigned long>(u))) continue;
        for (long s : {u, -u})
          if (value(s, v) == 0) out.emplace_back(xv, BigRational(s, v));
      }
    }
  }
  for (auto& [x, y] : out) {
    x.canonicalize();
    y.canonicalize();
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Integer points with |x|, |y| <= H by testing every pair.
inline long integral_by_pairs(const BiPoly& p, long H) {
  long n = 0;
  for (long x = -H; x <= H; ++x)
    for (long y = -H; y <= H; ++y)
      if (p.evaluate(BigRational(x), BigRational(y)) == 0) ++n;
  return n;
}

// Dense curve with small integer coefficients, redrawn until it passes validation.
inline PlaneCurve random_dense_curve(std::mt19937_64& rng, int d) {
  while (true) {
    BiPoly::Terms t;
    for (int e = 0; e <= d; ++e)
      for (int j = 0; j <= e; ++j) {
        long c = static_cast<long>(rng() % 9) - 4;
        if (e == d && j == 0 && c == 0) c = 1;
        if (c != 0) t.emplace(Monomial{e - j, j}, BigRational(c));
      }
    try {
      return curve_new(BiPoly(std::move(t)));
    } catch (const PreconditionError&) {
    }
  }
}

struct CorpusCurve {
  std::string name;
  PlaneCurve curve;
};

// The fixed corpus: named curves plus three seeded dense curves of degrees 4, 5, 6.
inline std::vector<CorpusCurve> corpus() {
  std::vector<CorpusCurve> out;
  for (const char* s : {"y - x^2", "x^2 + y^2 - 1", "x^2 + y^2 - 3", "x*y - 6", "x^3 + y^3 - 1", "x^5 + y^5 - 1"})
    out.push_back({s, curve_new(parse_bipoly(s))});
  std::mt19937_64 rng(20240611);
  for (int d = 4; d <= 6; ++d) {
    PlaneCurve c = random_dense_curve(rng, d);
    out.push_back({c.defining().to_string(), c});
  }
  return out;
}

}  // namespace oracle
