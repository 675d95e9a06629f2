#pragma once

#include "cusp/poly.hpp"

#include <string_view>

namespace cusp {

/// Parses polynomial text over the given variables.
///
/// Grammar: sums and products of integer or a/b literals, `I` (imaginary
/// unit), variable names, parentheses and non-negative integer powers `^`.
/// Division is only allowed by nonzero constants. Unknown identifiers raise
/// ParseError with the 1-based line and column of the offending token.
SparsePoly parse_poly(std::string_view text, const VarList& vars);

/// Parses a univariate series text (e.g. the h(u) argument) in variable `var`.
/// The result is exact; truncation is applied by the caller.
SparsePoly parse_univariate(std::string_view text, const std::string& var = "u");

/// Parses a single Q(i) constant such as "7/2" or "1 - 2*I".
GaussianRational parse_scalar(std::string_view text);

}  // namespace cusp
