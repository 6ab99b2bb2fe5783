#pragma once

#include <vector>

#include "elimkit/program.hpp"

namespace elimkit {

/// Source text of the built-in macros, in program-file syntax.
extern const char* const kBuiltinMacroSource;

/// gwsc(S, F, G) and stable(F).
std::vector<MacroDef> builtin_macro_table();

/// Empty program with the built-in macros registered.
Program builtin_program();

/// Adds `def` to `prog`. Macro names are unique regardless of arity. The
/// body may only use declared parameters, and parameter kinds must agree
/// with their use positions.
void register_macro(Program& prog, const MacroDef& def);

inline constexpr int kMaxMacroDepth = 32;

/// Outside-in expansion of every macro call. Throws DefinitionError for
/// unknown macros or arity mismatch and LimitError when nesting exceeds
/// `max_depth`.
Formula expand_macros(const Formula& f, const Program& prog, int max_depth = kMaxMacroDepth);

}  // namespace elimkit
