#pragma once

#include <string>

#include "elimkit/formula.hpp"
#include "elimkit/normalform.hpp"

namespace elimkit {

/// Simplified CNF with clauses written as reverse implications:
/// `((a ; b <- c, d), (e <- f))`. Atoms are sorted within each side and
/// clauses are sorted by their text. Prints `true` for the empty CNF and
/// `false` when the CNF contains the empty clause.
std::string print_ppr(const Formula& f);

/// Tautology- and subsumption-free DNF in list notation:
/// `[[a, ~b],[c]]`. Unsatisfiable formulas print `[]`, valid ones `[[]]`.
std::string print_ppm(const Formula& f);

/// List notation of an arbitrary clause set (in the order of the set).
std::string print_clause_list(const ClauseSet& c);

/// Fully parenthesized rendering that parse_formula() reads back into a
/// structurally equal tree.
std::string print_ast(const Formula& f);

}  // namespace elimkit
