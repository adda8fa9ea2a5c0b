#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polya_pila/rational.hpp"
#include "polya_pila/unipoly.hpp"

namespace polya_pila {

/// Interval endpoint that may be -infinity or +infinity.
struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  BigRational value{};

  static Endpoint neg_inf() { return {Kind::NegInf, 0}; }
  static Endpoint pos_inf() { return {Kind::PosInf, 0}; }
  static Endpoint at(const BigRational& v) { return {Kind::Finite, v}; }
  bool finite() const { return kind == Kind::Finite; }
};

/// Open interval (lo, hi) with possibly infinite ends.
struct OpenRange {
  Endpoint lo = Endpoint::neg_inf();
  Endpoint hi = Endpoint::pos_inf();
  static OpenRange whole_line() { return {}; }
  static OpenRange between(const BigRational& a, const BigRational& b) { return {Endpoint::at(a), Endpoint::at(b)}; }
};

/// Either an exact point [lo, lo] or an open interval (lo, hi) whose ends are not roots.
struct IsolatingInterval {
  BigRational lo;
  BigRational hi;
  bool exact() const { return lo == hi; }
  friend bool operator==(const IsolatingInterval&, const IsolatingInterval&) = default;
};

/// Closed interval with rational ends, used for enclosures.
struct RationalInterval {
  BigRational lo;
  BigRational hi;

  static RationalInterval point(const BigRational& v) { return {v, v}; }
  bool contains(const BigRational& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  BigRational width() const { return hi - lo; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  /// Requires b to exclude zero.
  friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
};

RationalInterval evaluate(const IntPoly& p, const RationalInterval& x);

/// Isolates the distinct real roots of p inside the open range with Sturm sequences.
/// Throws PreconditionError("identically zero") for p = 0.
std::vector<IsolatingInterval> sturm_isolate(const UniPoly& p, const OpenRange& range);

/// Same contract as sturm_isolate, computed by Descartes bisection on integer polynomials.
std::vector<IsolatingInterval> isolate_real_roots(const IntPoly& p, const OpenRange& range);

/// Number of distinct real roots of p in the half-open interval (a, b] (Sturm).
int count_roots(const UniPoly& p, const BigRational& a, const BigRational& b);

/// A real algebraic number: the unique root of a square-free primitive integer
/// polynomial inside an isolating interval.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(BigRational(0)) {}
  explicit AlgebraicReal(const BigRational& q);
  /// `poly` is made square-free and primitive; `interval` must isolate one of its roots.
  AlgebraicReal(const IntPoly& poly, IsolatingInterval interval);
  AlgebraicReal(const UniPoly& poly, IsolatingInterval interval);

  /// All real roots of p in the range, increasing.
  static std::vector<AlgebraicReal> roots_of(const IntPoly& p, const OpenRange& range = OpenRange::whole_line());

  const IntPoly& minimal_data() const { return poly_; }
  const IsolatingInterval& interval() const { return iv_; }
  bool is_rational() const { return iv_.exact(); }
  /// Exact value when the interval has collapsed; otherwise nullopt.
  std::optional<BigRational> as_rational() const;

  /// Interval width at most `width` (> 0). Returns a new value.
  AlgebraicReal refine(const BigRational& width) const;
  /// One bisection step.
  AlgebraicReal bisect() const;
  RationalInterval enclosure() const { return {iv_.lo, iv_.hi}; }
  double approx() const;
  std::string to_string() const;

 private:
  void bisect_inplace();
  friend int compare(AlgebraicReal a, AlgebraicReal b);
  friend int compare(AlgebraicReal a, const BigRational& q);
  friend int sign_at(AlgebraicReal a, const IntPoly& p);

  // refinement and rational detection keep the value, so they may happen on const objects
  mutable IntPoly poly_;
  mutable IsolatingInterval iv_;
};

/// Exact sign of p(a); zero is decided through gcd with the defining polynomial.
int sign_at(AlgebraicReal a, const IntPoly& p);
int sign_at(const AlgebraicReal& a, const UniPoly& p);
/// -1, 0, +1 as a <, =, > b.
int compare(AlgebraicReal a, AlgebraicReal b);
int compare(AlgebraicReal a, const BigRational& q);

inline bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == 0; }
inline bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) < 0; }

/// The fraction with the smallest denominator in the open interval (lo, hi), lo < hi.
BigRational simplest_between(const BigRational& lo, const BigRational& hi);

/// A rational strictly between a < b.
BigRational rational_between(AlgebraicReal a, AlgebraicReal b);

}  // namespace polya_pila
