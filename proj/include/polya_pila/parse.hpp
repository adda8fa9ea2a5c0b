#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "polya_pila/bipoly.hpp"

namespace polya_pila {

/// Sparse multivariate polynomial keyed by exponent vectors.
using SparsePoly = std::map<std::vector<int>, BigRational>;

/// Parses an expression over the named variables: integers, rationals, + - * /,
/// ^ with a nonnegative integer exponent, parentheses, implicit products ("3x y").
/// Division is allowed only by constants. Throws PreconditionError on bad input.
SparsePoly parse_sparse(std::string_view text, const std::vector<std::string>& variables);

/// Polynomial in x and y.
BiPoly parse_bipoly(std::string_view text);

/// {"terms":[{"i":0,"j":2,"c":"1"}, ...]}
BiPoly bipoly_from_json(const nlohmann::json& j);
nlohmann::json bipoly_to_json(const BiPoly& p);

/// Accepts either an expression or the JSON sparse form (text starting with '{').
BiPoly parse_bipoly_any(std::string_view text);

}  // namespace polya_pila
