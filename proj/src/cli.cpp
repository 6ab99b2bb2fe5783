#include "elimkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "elimkit/engine.hpp"
#include "elimkit/error.hpp"
#include "elimkit/macros.hpp"
#include "elimkit/normalform.hpp"
#include "elimkit/oracle.hpp"
#include "elimkit/parser.hpp"
#include "elimkit/printer.hpp"
#include "elimkit/quantifiers.hpp"
#include "elimkit/sat.hpp"

namespace elimkit::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Options {
  std::string file;
  std::string expr;
  std::string equiv;
  std::string format = "ppr";
  std::size_t max_oracle_atoms = kDefaultOracleBound;
  std::optional<std::string> external_sat;
  std::optional<std::string> external_qbf;
  std::optional<int> timeout_ms;
  std::string config;
  std::size_t step_limit = EngineConfig{}.step_limit;
  bool trace = false;
  bool verify = false;
};

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  if (!o.config.empty()) cfg = read_config_file(o.config);
  if (const char* v = std::getenv("ELIMKIT_SAT_CMD"); v && *v) cfg.external_sat_cmd = v;
  if (const char* v = std::getenv("ELIMKIT_QBF_CMD"); v && *v) cfg.external_qbf_cmd = v;
  if (o.external_sat) cfg.external_sat_cmd = *o.external_sat;
  if (o.external_qbf) cfg.external_qbf_cmd = *o.external_qbf;
  if (o.timeout_ms) cfg.timeout_ms = *o.timeout_ms;
  return cfg;
}

// Expression with macros and quantifiers expanded, as the oracle needs it.
Formula expanded(const Formula& f, const Program& prog, const EngineConfig& cfg) {
  return expand_quantifiers(expand_macros(f, prog, cfg.macro_depth), prog.domain);
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& err) : opts_(o), err_(err) {
    prog_ = o.file.empty() ? builtin_program() : load_problem_file(o.file);
    cfg_.solvers = solver_config(o);
    cfg_.step_limit = o.step_limit;
    if (o.trace) cfg_.trace = &err;
  }

  Formula parse(const std::string& text) const { return parse_formula(text, prog_); }

  Formula eliminate(const Formula& f) {
    EngineStats stats;
    Formula r = elimkit::eliminate(f, prog_, cfg_, &stats);
    if (!opts_.trace)
      for (const auto& d : stats.diagnostics) err_ << "warning: " << d << "\n";
    return r;
  }

  int elim(std::ostream& out) {
    Formula f = parse(opts_.expr);
    Formula r = eliminate(f);
    if (opts_.verify) {
      Formula e = expanded(f, prog_, cfg_);
      if (!equivalent(e, r, opts_.max_oracle_atoms)) {
        err_ << "error: result is not equivalent to the input\n";
        return kEngine;
      }
    }
    out << render(r, opts_.format);
    return kOk;
  }

  int check(std::ostream& out) {
    Formula f = expanded(parse(opts_.expr), prog_, cfg_);
    Formula g = expanded(parse(opts_.equiv), prog_, cfg_);
    AtomSet sig = atoms_of(f);
    for (const auto& a : atoms_of(g)) sig.insert(a);
    bool same;
    if (sig.size() <= opts_.max_oracle_atoms) {
      same = equivalent(f, g, opts_.max_oracle_atoms);
    } else {
      Formula diff = Formula::negation(Formula::equiv(eliminate(f), eliminate(g)));
      std::string diag;
      same = !solve_with(cfg_.solvers, clausify_equisat(diff), &diag);
      if (!diag.empty()) err_ << "warning: " << diag << "\n";
    }
    out << (same ? "true" : "false") << "\n";
    return same ? kOk : kFalse;
  }

  int models(std::ostream& out) {
    out << render(eliminate(parse(opts_.expr)), "models");
    return kOk;
  }

 private:
  const Options& opts_;
  std::ostream& err_;
  Program prog_;
  EngineConfig cfg_;
};

}  // namespace

Program load_problem_file(const std::string& path) { return parse_program(read_file(path)); }

std::string render(const Formula& f, const std::string& format) {
  if (format == "ast") return print_ast(f) + "\n";
  require_operator_free(f, "render");
  if (format == "ppr") return print_ppr(f) + "\n";
  if (format == "ppm") return print_ppm(f) + "\n";
  if (format == "models") return print_clause_list(full_dnf(f, plain_atoms(f))) + "\n";
  throw PreconditionError("unknown format '" + format + "'");
}

SolverConfig read_config_file(const std::string& path) {
  SolverConfig cfg;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", n, 1);
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "external_sat_cmd") {
      cfg.external_sat_cmd = value;
    } else if (key == "external_qbf_cmd") {
      cfg.external_qbf_cmd = value;
    } else if (key == "solver_timeout_ms") {
      try {
        cfg.timeout_ms = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("solver_timeout_ms must be an integer", n, eq + 2);
      }
    } else {
      throw ParseError("unknown config key '" + key + "'", n, 1);
    }
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eliminates second-order operators from propositional formulas.", "elimkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-f,--file", o.file, "problem file");
    sub->add_option("-e,--expr", o.expr, "query expression")->required();
    sub->add_option("--max-oracle-atoms", o.max_oracle_atoms, "largest signature handed to the oracle");
    sub->add_option("--external-sat", o.external_sat, "external SAT solver command");
    sub->add_option("--external-qbf", o.external_qbf, "external QBF solver command");
    sub->add_option("--solver-timeout-ms", o.timeout_ms, "external solver timeout");
    sub->add_option("--config", o.config, "solver configuration file");
    sub->add_option("--step-limit", o.step_limit, "elimination step limit");
    sub->add_flag("--trace", o.trace, "trace engine decisions on stderr");
  };
  CLI::App* elim = app.add_subcommand("elim", "eliminate and print the result");
  common(elim);
  elim->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"ppr", "ppm", "models", "ast"}));
  elim->add_flag("--verify", o.verify, "compare the result with the oracle");
  CLI::App* check = app.add_subcommand("check", "decide equivalence of two expressions");
  common(check);
  check->add_option("--equiv", o.equiv, "second expression")->required();
  CLI::App* models = app.add_subcommand("models", "print all models of the result");
  common(models);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Runner r(o, err);
    if (elim->parsed()) return r.elim(out);
    if (check->parsed()) return r.check(out);
    return r.models(out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DefinitionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kEngine;
  }
}

}  // namespace elimkit::cli
