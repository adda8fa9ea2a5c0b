#pragma once

#include <vector>

#include "polya_pila/unipoly.hpp"

namespace polya_pila {

/// Irreducible factors over Q of the square-free part of f, as primitive integer
/// polynomials sorted by degree. Constants give an empty list.
std::vector<IntPoly> factor_over_q(const IntPoly& f);

}  // namespace polya_pila
