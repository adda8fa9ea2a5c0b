#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polya_pila {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parses "a/b" or "a" (optional leading sign). Throws PreconditionError on bad input
/// or a zero denominator. The result is canonical.
BigRational parse_rational(std::string_view text);

/// Prints "a/b", or "a" when the denominator is 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// max(|numerator|, denominator) of a reduced fraction; the height of 0 is 1.
BigInt rational_height(const BigRational& q);

inline int sign(const BigRational& q) { return sgn(q); }
inline int sign(const BigInt& z) { return sgn(z); }

BigInt lcm_of_denominators_step(const BigInt& acc, const BigRational& q);

}  // namespace polya_pila
