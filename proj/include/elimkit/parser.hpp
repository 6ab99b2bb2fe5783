#pragma once

#include <string>
#include <string_view>

#include "elimkit/program.hpp"

namespace elimkit {

/// Parses a problem file. Statements:
///
///     let NAME = formula.
///     macro NAME(P1, ..., Pk) = formula.
///     domain {c1, ..., ck}.
///
/// `#` starts a line comment. Connectives from weakest to strongest:
/// `<->`, `->`/`<-` (right associative), `;`, `,`, `~`.
///
/// `base` supplies definitions and macros visible to the file, normally
/// the built-in macro table (see builtin_program()).
Program parse_program(std::string_view text, Program base);

/// As above, starting from the built-in macros.
Program parse_program(std::string_view text);

/// Parses one formula (an optional trailing `.` is accepted); names resolve
/// against `ctx`.
Formula parse_formula(std::string_view text, const Program& ctx);

/// Parses a scope expression such as `[+(0), 1]` or `complements([p])`.
Scope parse_scope(std::string_view text);

}  // namespace elimkit
