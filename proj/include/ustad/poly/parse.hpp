#pragma once

#include <string>

#include "ustad/poly/quad_poly.hpp"
#include "ustad/support/lexer.hpp"
#include "ustad/support/var_table.hpp"

namespace ustad {

// Parses "2*x*y - 3*x^2 + x + 4" style arithmetic: +, -, * (explicit), ^ with
// a nonnegative integer exponent, parentheses, unary sign. Degree is checked
// after the whole expression is expanded and collected, so transient
// higher-degree products that cancel are fine.
//
// With allow_new, unseen identifiers are appended to `vars`; otherwise they
// raise ParseError.
QuadPoly parse_poly(const std::string& text, VarTable& vars,
                    bool allow_new = true);

// Same grammar, consuming from an open token stream. Stops at the first token
// that cannot extend the expression (relational operators, ';', ...).
QuadPoly parse_poly_tokens(TokenStream& ts, VarTable& vars, bool allow_new);

}  // namespace ustad
