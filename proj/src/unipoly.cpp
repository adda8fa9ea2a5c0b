#include "polya_pila/unipoly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "polya_pila/errors.hpp"

namespace polya_pila {

UniPoly::UniPoly(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(const IntPoly& coefficients) {
  coeffs_.reserve(coefficients.size());
  for (const auto& c : coefficients) coeffs_.emplace_back(c);
  trim();
}

UniPoly UniPoly::constant(const BigRational& c) { return UniPoly(std::vector<BigRational>{c}); }

UniPoly UniPoly::linear_root(const BigRational& root) {
  return UniPoly(std::vector<BigRational>{-root, BigRational(1)});
}

UniPoly UniPoly::monomial(const BigRational& c, int degree) {
  std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational UniPoly::coefficient(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

BigRational UniPoly::evaluate(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<BigRational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  BigRational inv = 1 / leading();
  return inv * *this;
}

IntPoly UniPoly::primitive_integer() const {
  BigInt l = 1;
  for (const auto& c : coeffs_) l = lcm_of_denominators_step(l, c);
  IntPoly out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    BigRational scaled = c * l;
    out.push_back(scaled.get_num());
  }
  return intpoly::primitive(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<BigRational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly operator*(const BigRational& s, const UniPoly& a) {
  if (s == 0) return {};
  UniPoly out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRational> rem = coeffs_;
  int dd = divisor.degree();
  if (degree() < dd) return {UniPoly(), *this};
  std::vector<BigRational> quot(static_cast<std::size_t>(degree() - dd) + 1);
  BigRational inv = 1 / divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    BigRational f = rem[static_cast<std::size_t>(i)] * inv;
    if (f == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= f * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigRational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigRational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (!unit || i == 0) os << polya_pila::to_string(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  IntPoly g = intpoly::gcd(a.primitive_integer(), b.primitive_integer());
  return UniPoly(g).monic();
}

UniPoly square_free_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  return UniPoly(intpoly::square_free(p.primitive_integer())).monic();
}

namespace intpoly {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  BigInt g = content(p);
  if (p.back() < 0) g = -g;
  if (g != 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return p;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] += b[i];
  trim(v);
  return v;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] -= b[i];
  trim(v);
  return v;
}

namespace {

std::size_t max_bits(const IntPoly& p) {
  std::size_t b = 0;
  for (const auto& c : p) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

// Signed digits of `value` in base 2^bits, split recursively.
void kronecker_unpack(const BigInt& value, std::size_t first, std::size_t count, std::size_t bits, IntPoly& out) {
  if (count == 1) {
    out[first] = value;
    return;
  }
  std::size_t half = count / 2;
  mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(half * bits);
  BigInt low, high;
  mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), shift);
  mpz_fdiv_q_2exp(high.get_mpz_t(), value.get_mpz_t(), shift);
  if (mpz_sizeinbase(low.get_mpz_t(), 2) == shift && low != 0) {
    BigInt full;
    mpz_ui_pow_ui(full.get_mpz_t(), 2, shift);
    low -= full;
    high += 1;
  }
  kronecker_unpack(low, first, half, bits, out);
  kronecker_unpack(high, first + half, count - half, bits, out);
}

BigInt kronecker_pack(const IntPoly& p, std::size_t bits) {
  BigInt acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    acc += *it;
  }
  return acc;
}

}  // namespace

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) < 12) {
    IntPoly v(n);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(v[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(v);
    return v;
  }
  // Kronecker substitution: every product coefficient is below 2^(bits-1) in magnitude.
  std::size_t len_bits = mpz_sizeinbase(BigInt(static_cast<unsigned long>(std::min(a.size(), b.size()))).get_mpz_t(), 2);
  std::size_t bits = max_bits(a) + max_bits(b) + len_bits + 2;
  BigInt pa = kronecker_pack(a, bits);
  BigInt pb = kronecker_pack(b, bits);
  BigInt prod = pa * pb;
  IntPoly v(n);
  kronecker_unpack(prod, 0, n, bits, v);
  trim(v);
  return v;
}

IntPoly scale(const IntPoly& a, const BigInt& s) {
  if (s == 0) return {};
  IntPoly v = a;
  for (auto& c : v) c *= s;
  return v;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

std::optional<IntPoly> try_divide(const IntPoly& a, const IntPoly& b) {
  if (b.empty()) throw std::domain_error("exact_div by zero polynomial");
  if (a.empty()) return IntPoly{};
  int da = degree(a), db = degree(b);
  if (da < db) return std::nullopt;
  if (db == 0) {
    IntPoly q = a;
    for (auto& c : q) {
      if (!mpz_divisible_p(c.get_mpz_t(), b[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b[0].get_mpz_t());
    }
    return q;
  }
  IntPoly rem = a;
  IntPoly q(static_cast<std::size_t>(da - db) + 1);
  const BigInt& lb = b.back();
  for (int i = da; i >= db; --i) {
    BigInt& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    BigInt f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j)
      mpz_submul(rem[static_cast<std::size_t>(i - db + j)].get_mpz_t(), f.get_mpz_t(), b[static_cast<std::size_t>(j)].get_mpz_t());
    q[static_cast<std::size_t>(i - db)] = std::move(f);
  }
  for (int i = 0; i < db; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  trim(q);
  return q;
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::logic_error("exact_div: divisor does not divide");
  return *std::move(q);
}

int sign_at(const IntPoly& p, const BigRational& x) {
  if (p.empty()) return 0;
  const BigInt& a = x.get_num();
  const BigInt& b = x.get_den();
  // sum c_i a^i b^(n-i), Horner in (a, b)
  BigInt acc = p.back();
  BigInt bpow = 1;
  for (int i = degree(p) - 1; i >= 0; --i) {
    bpow *= b;
    acc *= a;
    mpz_addmul(acc.get_mpz_t(), p[static_cast<std::size_t>(i)].get_mpz_t(), bpow.get_mpz_t());
  }
  return sgn(acc);
}

BigRational evaluate(const IntPoly& p, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + BigRational(*it);
  return acc;
}

namespace {

// Pseudo-remainder of a by b (deg a >= deg b), primitive part returned.
IntPoly prem_primitive(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  int db = degree(b);
  const BigInt& lb = b.back();
  while (!r.empty() && degree(r) >= db) {
    BigInt lr = r.back();
    int shift = degree(r) - db;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), lr.get_mpz_t(), lb.get_mpz_t());
    BigInt mr = lb / g, mb = lr / g;
    for (auto& c : r) c *= mr;
    for (int j = 0; j <= db; ++j)
      mpz_submul(r[static_cast<std::size_t>(shift + j)].get_mpz_t(), mb.get_mpz_t(), b[static_cast<std::size_t>(j)].get_mpz_t());
    trim(r);
  }
  return primitive(std::move(r));
}

}  // namespace

namespace {

using Word = std::uint64_t;

Word mulmod(Word a, Word b, Word p) { return static_cast<Word>(static_cast<unsigned __int128>(a) * b % p); }

Word powmod(Word a, Word e, Word p) {
  Word r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

std::vector<Word> reduce_word(const IntPoly& a, Word p) {
  std::vector<Word> out(a.size());
  BigInt m(static_cast<unsigned long>(p)), r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    out[i] = r.get_ui();
  }
  return out;
}

// Degree of gcd(a, b) over Z/p, for p not dividing either leading coefficient.
int modular_gcd_degree(std::vector<Word> a, std::vector<Word> b, Word p) {
  auto strip = [](std::vector<Word>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    const Word inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const Word f = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        Word t = mulmod(f, b[i], p);
        Word& slot = a[i + shift];
        slot = slot >= t ? slot - t : slot + (p - t);
      }
      strip(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// A fixed sample of 62-bit primes.
const std::vector<Word>& word_primes() {
  static const std::vector<Word> primes = [] {
    std::vector<Word> out;
    BigInt q = BigInt(1) << 62;
    for (int i = 0; i < 8; ++i) {
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      out.push_back(q.get_ui());
    }
    return out;
  }();
  return primes;
}

// True when gcd(a, b) is certainly constant: a modular image of the gcd has degree zero.
bool coprime_by_reduction(const IntPoly& a, const IntPoly& b) {
  for (Word p : word_primes()) {
    auto ra = reduce_word(a, p), rb = reduce_word(b, p);
    if (ra.back() == 0 || rb.back() == 0) continue;
    return modular_gcd_degree(std::move(ra), std::move(rb), p) == 0;
  }
  return false;
}

}  // namespace

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = primitive(a0), b = primitive(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  if (degree(b) == 0 || coprime_by_reduction(a, b)) return IntPoly{BigInt(1)};
  while (!b.empty()) {
    if (degree(b) == 0) return IntPoly{BigInt(1)};
    IntPoly r = prem_primitive(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return primitive(std::move(a));
}

IntPoly square_free(const IntPoly& p) {
  IntPoly q = primitive(p);
  if (degree(q) <= 1) return q;
  IntPoly g = gcd(q, derivative(q));
  if (degree(g) == 0) return q;
  return primitive(exact_div(q, g));
}

IntPoly taylor_shift(const IntPoly& p, const BigInt& s) {
  IntPoly q = p;
  int n = degree(q);
  if (s == 0 || n <= 0) return q;
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j)
      mpz_addmul(q[static_cast<std::size_t>(j)].get_mpz_t(), s.get_mpz_t(), q[static_cast<std::size_t>(j + 1)].get_mpz_t());
  return q;
}

IntPoly map_to_unit(const IntPoly& p, const BigRational& lo, const BigRational& hi) {
  // p(lo + w t) with lo = a/b, w = c/e; multiply through by (b e)^n.
  int n = degree(p);
  if (n < 0) return {};
  BigRational w = hi - lo;
  const BigInt& a = lo.get_num();
  const BigInt& b = lo.get_den();
  const BigInt& c = w.get_num();
  const BigInt& e = w.get_den();
  // step 1: r(s) = b^n p(s / b)  with s = b x  -> integer polynomial in s; then shift s -> s + a.
  IntPoly r(p.size());
  BigInt bp = 1;
  for (int i = n; i >= 0; --i) {
    r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] * bp;
    bp *= b;
  }
  r = taylor_shift(r, a);
  // now r(s) with x = (s)/b evaluated at s = a + b w t. Substitute s = (b c / e) t:
  // e^n r(b c t / e) = sum r_i (b c)^i e^(n-i) t^i.
  BigInt bc = b * c;
  BigInt pw = 1;
  for (int i = 0; i <= n; ++i) {
    r[static_cast<std::size_t>(i)] *= pw;
    pw *= bc;
  }
  BigInt pe = 1;
  for (int i = n; i >= 0; --i) {
    r[static_cast<std::size_t>(i)] *= pe;
    pe *= e;
  }
  return primitive(std::move(r));
}

BigInt cauchy_bound(const IntPoly& p) {
  if (degree(p) <= 0) return 1;
  BigInt mx = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    BigInt a = abs(p[i]);
    if (a > mx) mx = a;
  }
  BigInt lead = abs(p.back());
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), mx.get_mpz_t(), lead.get_mpz_t());
  return q + 2;
}

}  // namespace intpoly

}  // namespace polya_pila
