#pragma once

#include <cstddef>
#include <string_view>

#include "wronsos/polynomial.hpp"

namespace wronsos {

/// Parses the polynomial grammar: variables z1..z9, integer or rational
/// literals ("3", "-2/5"), + - * ^, parentheses. The result has
/// max(min_nvars, highest variable used) variables. Errors are
/// Error{ErrorKind::Parse} with "line L, column C" in the message.
Polynomial parse_polynomial(std::string_view text, std::size_t min_nvars = 0);

}  // namespace wronsos
