#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "condlog/errors.hpp"
#include "condlog/syntax.hpp"

namespace condlog {

/// Parses one formula. `E` and `=` are accepted only where the language
/// admits them; under L= the token E(x) is expanded to exists z (x = z).
Formula parse_formula(std::string_view text, Language lang);

/// Schema patterns: both E and = are admitted and E stays a primitive node.
Formula parse_pattern(std::string_view text);

/// One formula per non-blank line; `#` starts a comment.
std::vector<Formula> parse_formula_lines(std::string_view text, Language lang);

/// Minimal parentheses; parse_formula(print_formula(f)) is alpha-equivalent to f.
std::string print_formula(const Formula& f);

}  // namespace condlog
