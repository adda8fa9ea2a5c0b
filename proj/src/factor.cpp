#include "polya_pila/factor.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace polya_pila {

namespace {

// Polynomials over Z/p with coefficients in [0, p), lowest degree first.
using ModPoly = std::vector<BigInt>;

class ModRing {
 public:
  explicit ModRing(BigInt p) : p_(std::move(p)) {}

  const BigInt& prime() const { return p_; }

  BigInt reduce(const BigInt& c) const {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p_.get_mpz_t());
    return r;
  }

  BigInt inverse(const BigInt& c) const {
    BigInt r;
    mpz_invert(r.get_mpz_t(), c.get_mpz_t(), p_.get_mpz_t());
    return r;
  }

  static void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  ModPoly from(const IntPoly& f) const {
    ModPoly a;
    a.reserve(f.size());
    for (const auto& c : f) a.push_back(reduce(c));
    trim(a);
    return a;
  }

  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      BigInt v = (i < a.size() ? a[i] : BigInt(0)) - (i < b.size() ? b[i] : BigInt(0));
      r[i] = reduce(v);
    }
    trim(r);
    return r;
  }

  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (auto& c : r) c = reduce(c);
    trim(r);
    return r;
  }

  // Quotient and remainder; b must be nonzero.
  std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b) const {
    const int db = static_cast<int>(b.size()) - 1;
    BigInt inv = inverse(b.back());
    ModPoly q;
    if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - static_cast<std::size_t>(db), BigInt(0));
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
      BigInt f = reduce(a[static_cast<std::size_t>(i)] * inv);
      if (f == 0) continue;
      q[static_cast<std::size_t>(i - db)] = f;
      for (int j = 0; j <= db; ++j) {
        BigInt& t = a[static_cast<std::size_t>(i - db + j)];
        mpz_submul(t.get_mpz_t(), f.get_mpz_t(), b[static_cast<std::size_t>(j)].get_mpz_t());
        t = reduce(t);
      }
    }
    trim(a);
    trim(q);
    return {std::move(q), std::move(a)};
  }

  ModPoly rem(ModPoly a, const ModPoly& b) const { return divmod(std::move(a), b).second; }

  ModPoly monic(ModPoly a) const {
    if (a.empty()) return a;
    BigInt inv = inverse(a.back());
    for (auto& c : a) c = reduce(c * inv);
    return a;
  }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(std::move(a), b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(std::move(a));
  }

  ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& f) const {
    ModPoly result{BigInt(1)};
    ModPoly b = rem(base, f);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = rem(mul(result, result), f);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b), f);
    }
    return result;
  }

  ModPoly derivative(const ModPoly& a) const {
    ModPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(reduce(a[i] * BigInt(static_cast<unsigned long>(i))));
    trim(r);
    return r;
  }

 private:
  BigInt p_;
};

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

// Distinct-degree factorization of a monic square-free f: pairs (product, factor degree).
std::vector<std::pair<ModPoly, int>> distinct_degree(const ModRing& R, ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x{BigInt(0), BigInt(1)};
  ModPoly h = x;
  for (int i = 1; 2 * i <= deg(f); ++i) {
    h = R.powmod(h, R.prime(), f);
    ModPoly g = R.gcd(f, R.sub(h, x));
    if (deg(g) > 0) {
      out.emplace_back(g, i);
      f = R.divmod(f, g).first;
      h = R.rem(h, f);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) of a monic product of degree-i factors.
void equal_degree(const ModRing& R, const ModPoly& g, int i, gmp_randclass& rng, std::vector<ModPoly>& out) {
  if (deg(g) == i) {
    out.push_back(g);
    return;
  }
  BigInt e;
  mpz_pow_ui(e.get_mpz_t(), R.prime().get_mpz_t(), static_cast<unsigned long>(i));
  e = (e - 1) / 2;
  while (true) {
    ModPoly a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = rng.get_z_range(R.prime());
    ModRing::trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = R.sub(R.powmod(a, e, g), ModPoly{BigInt(1)});
    ModPoly c = R.gcd(g, b);
    if (deg(c) > 0 && deg(c) < deg(g)) {
      equal_degree(R, c, i, rng, out);
      equal_degree(R, R.divmod(g, c).first, i, rng, out);
      return;
    }
  }
}

// Bound on the coefficients of any factor of f in Z[x]: 2^deg(f) * ||f||_2 (Mignotte).
BigInt factor_coefficient_bound(const IntPoly& f) {
  BigInt sq = 0;
  for (const auto& c : f) sq += c * c;
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  root += 1;
  mpz_mul_2exp(root.get_mpz_t(), root.get_mpz_t(), static_cast<mp_bitcnt_t>(intpoly::degree(f)));
  return root;
}

IntPoly symmetric_lift(const ModPoly& a, const BigInt& p) {
  BigInt half = p / 2;
  IntPoly r;
  for (const auto& c : a) r.push_back(c > half ? BigInt(c - p) : c);
  intpoly::trim(r);
  return r;
}

std::vector<IntPoly> factor_square_free(IntPoly f) {
  f = intpoly::primitive(std::move(f));
  if (intpoly::degree(f) <= 1) return {f};
  BigInt lc = abs(f.back());
  BigInt p;
  BigInt start = 2 * lc * factor_coefficient_bound(f) + 1;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  while (true) {
    ModRing R(p);
    ModPoly fm = R.from(f);
    if (deg(fm) == intpoly::degree(f) && deg(R.gcd(fm, R.derivative(fm))) == 0) break;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  ModRing R(p);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20240601UL);
  std::vector<ModPoly> local;
  for (auto& [g, i] : distinct_degree(R, R.monic(R.from(f)))) equal_degree(R, g, i, rng, local);

  // Zassenhaus recombination; p exceeds twice every coefficient of lc * (true factor)
  std::vector<IntPoly> out;
  const int r = static_cast<int>(local.size());
  if (r > 24) throw std::length_error("factor_over_q: too many modular factors");
  std::uint32_t remaining = (1u << r) - 1;
  for (int s = 1; 2 * s <= std::popcount(remaining); ++s) {
    bool restart = true;
    while (restart) {
      restart = false;
      for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
        if ((mask & ~remaining) != 0 || std::popcount(mask) != s) continue;
        ModPoly g{R.reduce(f.back())};
        for (int i = 0; i < r; ++i)
          if (mask & (1u << i)) g = R.mul(g, local[static_cast<std::size_t>(i)]);
        IntPoly cand = intpoly::primitive(symmetric_lift(g, p));
        if (auto q = intpoly::try_divide(f, cand)) {
          out.push_back(std::move(cand));
          f = intpoly::primitive(std::move(*q));
          remaining &= ~mask;
          restart = 2 * s <= std::popcount(remaining);
          break;
        }
      }
    }
  }
  if (intpoly::degree(f) > 0) out.push_back(intpoly::primitive(std::move(f)));
  return out;
}

}  // namespace

std::vector<IntPoly> factor_over_q(const IntPoly& f) {
  if (intpoly::degree(f) <= 0) return {};
  auto out = factor_square_free(intpoly::square_free(f));
  std::stable_sort(out.begin(), out.end(),
                   [](const IntPoly& a, const IntPoly& b) { return intpoly::degree(a) < intpoly::degree(b); });
  return out;
}

}  // namespace polya_pila
