#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "elimkit/formula.hpp"
#include "elimkit/normalform.hpp"

namespace elimkit {

/// Group reserved for definitional atoms of clausify_equisat(). Their base
/// names contain a quote and cannot be written in the input language.
inline constexpr std::uint32_t kDefinitionalGroup = 0xFFFFFF00U;

bool is_definitional(const Atom& a);

/// Equisatisfiable clause set. Formulas already in clausal shape are
/// translated directly, others through definitional atoms.
ClauseSet clausify_equisat(const Formula& f);

struct SatResult {
  bool satisfiable = false;
  /// Total assignment over the clause set's signature when satisfiable.
  std::map<Atom, bool> model;
};

/// DPLL with unit propagation and pure-literal elimination; branches on the
/// most frequent atom, ties broken by name.
SatResult solve_cnf(const ClauseSet& c);

bool satisfiable(const Formula& f);

/// Decides a closed formula whose only operators are Forg nodes (every atom
/// bound with both literals by an enclosing forgetting). Returns true iff
/// it is equivalent to true. Throws PreconditionError for open input.
bool decide_closed(const Formula& f);

/// True iff every atom of `f` is bound by an enclosing Forg over both of its
/// literals and Forg is the only operator present.
bool is_closed(const Formula& f);

}  // namespace elimkit
