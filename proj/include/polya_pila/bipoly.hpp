#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polya_pila/rational.hpp"
#include "polya_pila/unipoly.hpp"

namespace polya_pila {

enum class Axis { X, Y };

inline Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }
inline char axis_name(Axis a) { return a == Axis::X ? 'x' : 'y'; }

/// Exponent pair x^i y^j. Ordered graded lexicographically: 1, x, y, x^2, xy, y^2, ...
struct Monomial {
  int i = 0;
  int j = 0;
  int degree() const { return i + j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

/// Sparse bivariate polynomial over the rationals. No stored zero coefficients.
class BiPoly {
 public:
  using Terms = std::map<Monomial, BigRational>;

  BiPoly() = default;
  explicit BiPoly(Terms terms);
  static BiPoly constant(const BigRational& c);
  static BiPoly x();
  static BiPoly y();
  static BiPoly term(const BigRational& c, int i, int j);
  /// Embeds a univariate polynomial in the given variable.
  static BiPoly from_uni(const UniPoly& p, Axis var);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return total_degree() <= 0; }
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Axis a) const;
  BigRational coefficient(int i, int j) const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BigRational& s, const BiPoly& a);
  BiPoly operator-() const;
  BiPoly pow(int e) const;
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  BigRational evaluate(const BigRational& xv, const BigRational& yv) const;
  /// Integer multiple with coprime integer coefficients and positive leading
  /// (graded-lex largest) coefficient.
  BiPoly primitive() const;
  bool has_integer_coefficients() const;

  /// Coefficients with respect to `main`: result[j] is the coefficient of main^j
  /// as a rational polynomial in the other variable.
  std::vector<UniPoly> coefficients_in(Axis main) const;
  /// Same, integer-cleared by one common positive scalar.
  std::vector<IntPoly> integer_coefficients_in(Axis main) const;

  /// Swaps the roles of x and y.
  BiPoly swapped() const;
  /// p(x + s*y, y)
  BiPoly shear_x(const BigRational& s) const;
  /// p(-x, y) or p(x, -y)
  BiPoly negate(Axis a) const;
  /// v^(deg_v p) * p(..1/v..)
  BiPoly invert(Axis a) const;

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Number of monomials of total degree at most k: (k+1)(k+2)/2.
long mu(int k);

/// Monomials of degree <= k in graded lexicographic order.
struct MonomialBasis {
  int k = 0;
  std::vector<Monomial> entries;
  static MonomialBasis of_degree(int k);
};

BiPoly partial_derivative(const BiPoly& p, Axis axis);

/// p(value, y) for axis X, p(x, value) for axis Y; the result is a polynomial in the remaining variable.
UniPoly specialize(const BiPoly& p, Axis axis, const BigRational& value);

/// Resultant eliminating `eliminate` (Sylvester determinant, p rows first).
/// Degree-zero operands follow the Sylvester convention: Res(p, c) = c^deg(p).
UniPoly resultant(const BiPoly& p, const BiPoly& q, Axis eliminate);

/// Same on integer coefficient vectors (index = power of the eliminated variable).
IntPoly resultant_int(const std::vector<IntPoly>& p, const std::vector<IntPoly>& q);
/// Coefficients (index = power) of the j-th subresultant of p and q.
std::vector<IntPoly> subresultant_int(const std::vector<IntPoly>& p, const std::vector<IntPoly>& q, int j);

/// Determinant of a square matrix over Z[t] by fraction-free (Bareiss) elimination.
IntPoly bareiss_determinant(std::vector<std::vector<IntPoly>> m);

/// Exact bivariate division in Q[x,y]; nullopt if `divisor` does not divide `p`.
std::optional<BiPoly> divide_exact(const BiPoly& p, const BiPoly& divisor);

}  // namespace polya_pila
