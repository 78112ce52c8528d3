#pragma once

#include <string>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"

namespace lepage {

/// Parses the expression language:
///   - identifiers [A-Za-z][A-Za-z0-9_]* must be chart coordinates (x, y,
///     jets, formal second jets, momenta), declared parameters, or `im`;
///   - numeric literals are integers, decimals, or quotients like 3/16
///     (the division operator folds exact constants);
///   - precedence ^ > unary - > *,/ > +,-; all left-associative except ^;
///   - `^` takes an integer-literal exponent only;
///   - sin, cos, exp, log applied with parentheses.
/// Throws SyntaxError, UnknownIdentifier, NonIntegerExponent.
Expr parse(const std::string& text, const Chart& chart, const std::vector<std::string>& params = {});

}  // namespace lepage
