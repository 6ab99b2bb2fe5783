#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "elimkit/external.hpp"
#include "elimkit/formula.hpp"
#include "elimkit/program.hpp"

namespace elimkit::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kUsage = 2, kEngine = 3 };

/// Reads and parses a problem file on top of the built-in macros.
Program load_problem_file(const std::string& path);

/// `ppr`, `ppm`, `models` (full DNF over the atoms of `f`) or `ast`, with
/// a trailing newline.
std::string render(const Formula& f, const std::string& format);

/// `key = value` lines; `#` comments. Known keys: external_sat_cmd,
/// external_qbf_cmd, solver_timeout_ms.
SolverConfig read_config_file(const std::string& path);

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elimkit::cli
