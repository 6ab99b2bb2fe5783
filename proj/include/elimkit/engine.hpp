#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "elimkit/external.hpp"
#include "elimkit/formula.hpp"
#include "elimkit/normalform.hpp"
#include "elimkit/program.hpp"

namespace elimkit {

struct EngineConfig {
  /// Only node count is implemented; kept as a field so other measures can
  /// be added without changing call sites.
  enum class SizeMeasure { NodeCount };
  SizeMeasure size_measure = SizeMeasure::NodeCount;
  /// Commit size-non-increasing Shannon expansions during simplification.
  bool shannon_guard = true;
  /// Resolution is chosen while #pos * #neg <= #pos + #neg + slack.
  std::size_t dp_slack = 0;
  /// CNF conversion for the resolution method gives up beyond this many
  /// clauses and the portfolio falls back to Shannon expansion.
  std::size_t dp_max_clauses = 4096;
  /// Merge nested forgetting: forg(S1, forg(S2, F)) -> forg(S1 ∪ S2, F).
  bool merge_forgetting = true;
  SolverConfig solvers;
  std::size_t step_limit = 100000;
  int macro_depth = 32;
  /// Line-oriented trace of engine decisions; null disables tracing.
  std::ostream* trace = nullptr;
};

struct EngineStats {
  std::size_t steps = 0;
  std::size_t rewrites = 0;
  std::size_t shannon_commits = 0;
  std::size_t sat_calls = 0;
  std::size_t qbf_calls = 0;
  std::size_t dp_choices = 0;
  std::size_t shannon_choices = 0;
  std::size_t solver_fallbacks = 0;
  /// One message per external solver failure that fell back internally.
  std::vector<std::string> diagnostics;
};

/// Eliminates every second-order operator from `f`. Macros are expanded
/// against `prog`, quantifiers over `prog.domain`. The result is
/// equivalent to `f` over the signature atoms_of(f).
Formula eliminate(const Formula& f, const Program& prog, const EngineConfig& cfg = {},
                  EngineStats* stats = nullptr);

/// Proj/Circ replaced by Forg over explicit literal sets; Forg scopes are
/// grounded against `sig`. Circumscription arguments that still contain
/// operators are eliminated first.
Formula rewrite_to_primitives(const Formula& f, const AtomSet& sig, const EngineConfig& cfg = {});

/// Forgetting-based encoding of scope-determined circumscription of `g`,
/// which may contain no operator other than forgetting. `sig` fixes the
/// minimized/maximized/fixed/varied partition.
Formula build_circ_reduction(const Scope& s, const Formula& g, const AtomSet& sig);

/// Group used for the primed copies of build_circ_reduction: one above the
/// largest group in `sig`.
std::uint32_t reserved_prime_group(const AtomSet& sig);

/// One bottom-up pass of the equivalence-preserving rewrites. Returns
/// nullopt when nothing changed. Forg scopes must be explicit literal lists
/// (as produced by rewrite_to_primitives).
std::optional<Formula> simplify_step(const Formula& f, const EngineConfig& cfg = {});

/// Applies simplify_step until nothing changes.
Formula simplify(const Formula& f, const EngineConfig& cfg = {});

/// (p ∧ G[p\⊤]) ∨ (¬p ∧ G[p\⊥]) with constants propagated.
Formula shannon_step(const Formula& g, const Atom& p);

/// Resolution-based elimination of one atom from a CNF.
ClauseSet dp_forget_atom(const ClauseSet& c, const Atom& a);

/// Which specialized procedure the scheduler hands a subformula to.
struct Subtask {
  enum class Kind { None, Sat, Qbf, Dp, Shannon };
  Kind kind = Kind::None;
  /// Preorder index of the chosen node (leftmost-innermost first).
  std::size_t node = 0;
  Formula target;
  Atom atom;  // for Dp / Shannon
};

/// Picks the next subtask: SAT-reducible forgetting first, then closed
/// QBF-reducible subformulas, then proper forgetting via the DP/Shannon
/// portfolio.
Subtask schedule_subtask(const Formula& current, const EngineConfig& cfg = {});

/// The literal set of a grounded (explicit) scope.
LiteralSet scope_literals(const Scope& s);

}  // namespace elimkit
