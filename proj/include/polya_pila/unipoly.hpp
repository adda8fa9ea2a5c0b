#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polya_pila/rational.hpp"

namespace polya_pila {

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// Trailing zeros are trimmed; the zero polynomial is the empty vector.
using IntPoly = std::vector<BigInt>;

/// Dense univariate polynomial over the rationals. The leading coefficient is
/// nonzero unless the polynomial is zero (no coefficients).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BigRational> coefficients);
  explicit UniPoly(const IntPoly& coefficients);
  static UniPoly constant(const BigRational& c);
  /// x - root
  static UniPoly linear_root(const BigRational& root);
  static UniPoly monomial(const BigRational& c, int degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigRational& leading() const { return coeffs_.back(); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }
  BigRational coefficient(int i) const;

  BigRational evaluate(const BigRational& x) const;
  int sign_at(const BigRational& x) const { return sgn(evaluate(x)); }

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Content-free integer polynomial with positive leading coefficient.
  IntPoly primitive_integer() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const BigRational& s, const UniPoly& a);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), made monic.
UniPoly square_free_part(const UniPoly& p);

namespace intpoly {

void trim(IntPoly& p);
inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }
BigInt content(const IntPoly& p);
/// Divides out the content and makes the leading coefficient positive.
IntPoly primitive(IntPoly p);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly scale(const IntPoly& a, const BigInt& s);
IntPoly derivative(const IntPoly& p);
/// Exact quotient a / b in Z[x]; throws std::logic_error if b does not divide a.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
/// Quotient in Z[x] when b divides a there, nullopt otherwise.
std::optional<IntPoly> try_divide(const IntPoly& a, const IntPoly& b);
/// Sign of p at the rational a/b computed from the homogenized integer value.
int sign_at(const IntPoly& p, const BigRational& x);
BigRational evaluate(const IntPoly& p, const BigRational& x);
/// Primitive square-free part with positive leading coefficient.
IntPoly square_free(const IntPoly& p);
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// p(x + s) for integer s.
IntPoly taylor_shift(const IntPoly& p, const BigInt& s);
/// Integer polynomial whose roots in (0,1) correspond to roots of p in (lo, hi):
/// q(t) = den * p(lo + (hi - lo) t).
IntPoly map_to_unit(const IntPoly& p, const BigRational& lo, const BigRational& hi);
/// An integer bound B with every real root strictly inside (-B, B).
BigInt cauchy_bound(const IntPoly& p);

}  // namespace intpoly

}  // namespace polya_pila
