#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "elimkit/formula.hpp"

namespace elimkit {

/// Sorted, duplicate-free literal list. Read as a disjunction in CNF mode
/// and as a conjunction in DNF mode.
using Clause = std::vector<Literal>;

Clause make_clause(std::vector<Literal> lits);
/// Contains some literal together with its complement.
bool is_tautology(const Clause& c);
bool subsumes(const Clause& small, const Clause& big);

struct ClauseSet {
  std::set<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }
  bool has_empty_clause() const { return !clauses.empty() && clauses.begin()->empty(); }
  AtomSet signature() const;

  friend bool operator==(const ClauseSet&, const ClauseSet&) = default;
};

enum class ClauseMode { Cnf, Dnf };

/// Drops clauses with complementary literals, then clauses that are proper
/// supersets of another clause. Idempotent.
ClauseSet simplify_clauses(const ClauseSet& c, ClauseMode mode = ClauseMode::Cnf);

/// Equivalence-preserving CNF (no auxiliary atoms). `max_clauses` bounds
/// intermediate results; nullopt means the bound was hit. 0 means no bound.
std::optional<ClauseSet> try_to_cnf(const Formula& f, std::size_t max_clauses);
std::optional<ClauseSet> try_to_dnf(const Formula& f, std::size_t max_clauses);

ClauseSet to_cnf(const Formula& f);
ClauseSet to_dnf(const Formula& f);

/// One conjunction per model of `f` over `sig`, each with exactly one
/// literal per atom. Throws BoundError if |sig| > `bound`.
ClauseSet full_dnf(const Formula& f, const AtomSet& sig, std::size_t bound = 20);

Formula cnf_formula(const ClauseSet& c);
Formula dnf_formula(const ClauseSet& c);

}  // namespace elimkit
