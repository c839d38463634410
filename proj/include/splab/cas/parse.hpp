#pragma once

#include <string_view>

#include "splab/cas/mpoly.hpp"
#include "splab/cas/ratfunc.hpp"

namespace splab::cas {

// Grammar (whitespace ignored):
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := power (('*'|'/') power)*
//   power   := atom ['^' digits]
//   atom    := digits | 'X' | 'Y' | 'Z' | '(' expr ')' | '-' atom
// Division by a non-constant is accepted only by parse_ratfunc.

/// Throws ParseError with the offending position.
MPoly parse_poly(std::string_view text);
RatFunc parse_ratfunc(std::string_view text);

}  // namespace splab::cas
