#include "elimkit/printer.hpp"

#include <algorithm>

namespace elimkit {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string ppr_clause(const Clause& c) {
  std::vector<std::string> heads, body;
  for (const auto& l : c) (l.positive ? heads : body).push_back(l.atom.name());
  std::sort(heads.begin(), heads.end());
  std::sort(body.begin(), body.end());
  std::string head = heads.empty() ? "false" : join(heads, " ; ");
  if (body.empty()) return head;
  return head + " <- " + join(body, ", ");
}

}  // namespace

std::string print_ppr(const Formula& f) {
  ClauseSet cnf = to_cnf(f);
  if (cnf.empty()) return "true";
  if (cnf.has_empty_clause()) return "false";
  std::vector<std::string> clauses;
  for (const auto& c : cnf.clauses) clauses.push_back(ppr_clause(c));
  std::sort(clauses.begin(), clauses.end());
  if (clauses.size() == 1) return "(" + clauses[0] + ")";
  for (auto& c : clauses)
    if (c.find(' ') != std::string::npos) c = "(" + c + ")";
  return "(" + join(clauses, ", ") + ")";
}

std::string print_clause_list(const ClauseSet& c) {
  std::vector<std::string> clauses;
  for (const auto& cl : c.clauses) {
    std::vector<std::string> lits;
    for (const auto& l : cl) lits.push_back(l.str());
    clauses.push_back("[" + join(lits, ", ") + "]");
  }
  return "[" + join(clauses, ",") + "]";
}

std::string print_ppm(const Formula& f) { return print_clause_list(to_dnf(f)); }

namespace {

std::string binary(const Formula& f, const char* op) {
  return "(" + print_ast(f.lhs()) + " " + op + " " + print_ast(f.rhs()) + ")";
}

}  // namespace

std::string print_ast(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Atom:
      return f.atom().name();
    case K::Not:
      return "~" + print_ast(f.child());
    case K::And:
      return "(" + print_ast(f.lhs()) + ", " + print_ast(f.rhs()) + ")";
    case K::Or:
      return binary(f, ";");
    case K::Implies:
      return binary(f, "->");
    case K::ImpliedBy:
      return binary(f, "<-");
    case K::Equiv:
      return binary(f, "<->");
    case K::Forg:
      return "forg(" + f.scope().str() + ", " + print_ast(f.child()) + ")";
    case K::Proj:
      return "proj(" + f.scope().str() + ", " + print_ast(f.child()) + ")";
    case K::Circ:
      return "circ(" + f.scope().str() + ", " + print_ast(f.child()) + ")";
    case K::Rename: {
      std::vector<std::string> pairs;
      for (const auto& p : f.pairs()) pairs.push_back(std::to_string(p.from) + "-" + std::to_string(p.to));
      return "rename([" + join(pairs, ", ") + "], " + print_ast(f.child()) + ")";
    }
    case K::MacroCall: {
      std::vector<std::string> args;
      for (const auto& a : f.args()) {
        if (const auto* s = std::get_if<Scope>(&a))
          args.push_back(s->str());
        else
          args.push_back(print_ast(std::get<Formula>(a)));
      }
      return f.name() + "(" + join(args, ", ") + ")";
    }
    case K::ForAll:
      return "all(" + f.name() + ", " + print_ast(f.child()) + ")";
    case K::Exists:
      return "ex(" + f.name() + ", " + print_ast(f.child()) + ")";
    case K::Param:
      return f.name();
  }
  return "";
}

}  // namespace elimkit
