#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elimkit/formula.hpp"
#include "elimkit/normalform.hpp"

namespace elimkit {

/// DIMACS text plus the variable dictionary: atom i of `atoms` is variable
/// i + 1. Atoms are numbered in name order.
struct DimacsEncoding {
  std::string text;
  std::vector<Atom> atoms;
};

DimacsEncoding emit_dimacs(const ClauseSet& c);

/// Reads DIMACS clauses back through the dictionary produced by emit_dimacs.
ClauseSet parse_dimacs(const std::string& text, const std::vector<Atom>& atoms);

/// QDIMACS encoding of a closed formula (see decide_closed()). Forgetting
/// becomes existential quantification, negated forgetting universal; the
/// matrix is clausified with auxiliary variables in an innermost
/// existential block.
std::string emit_qdimacs(const Formula& closed);

/// Interprets solver output. Exit codes 10/20 decide; otherwise lines such
/// as `s SATISFIABLE`, `SAT`, `UNSAT`, `s cnf 1`. Throws SolverError when no
/// verdict can be found.
bool parse_solver_output(const std::string& stdout_text, int exit_code);

struct SolverConfig {
  std::string external_sat_cmd;
  std::string external_qbf_cmd;
  int timeout_ms = 10000;
};

struct ProcessResult {
  int exit_code = 0;
  std::string stdout_text;
};

/// Runs `command input_path` through /bin/sh with the problem text written
/// to a temporary file. Throws SolverError on launch failure or timeout.
ProcessResult run_solver_process(const std::string& command, const std::string& input, int timeout_ms);

/// Satisfiability through the configured solver. A failing external solver
/// is reported through `diagnostic` and the internal solver answers.
bool solve_with(const SolverConfig& cfg, const ClauseSet& c, std::string* diagnostic = nullptr);

/// decide_closed() through the configured QBF solver, with internal fallback.
bool decide_closed_with(const SolverConfig& cfg, const Formula& closed, std::string* diagnostic = nullptr);

}  // namespace elimkit
