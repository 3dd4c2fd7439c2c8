#pragma once

#include <string_view>

#include "deforma/function.hpp"

namespace deforma {

/// Parses a real function of `x`:
///
///   expr   := term (("+" | "-") term)*
///   term   := unary (("*" | "/") unary)*
///   unary  := ("+" | "-") unary | power
///   power  := atom ("^" unary)?
///   atom   := number | "x" | ident "(" expr ")" | "(" expr ")"
///   ident  := exp | sin | cos | sqrt | abs
///
/// Whitespace is ignored. The returned handle carries three analytic
/// derivatives obtained by differentiating the syntax tree.
///
/// Throws ParseError (with the offending position) on malformed input or an
/// unknown identifier.
FunctionHandle parse_expression(std::string_view text);

}  // namespace deforma
