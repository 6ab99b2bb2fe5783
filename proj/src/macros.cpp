#include "elimkit/macros.hpp"

#include <map>
#include <set>

#include "elimkit/error.hpp"
#include "elimkit/parser.hpp"

namespace elimkit {

const char* const kBuiltinMacroSource =
    "macro gwsc(S, F, G) = ~proj(complements(S), (F, ~G)).\n"
    "macro stable(F) = rename([1-0], circ([+(0), 1], F)).\n";

Program builtin_program() {
  static const Program builtins = parse_program(kBuiltinMacroSource, Program{});
  return builtins;
}

std::vector<MacroDef> builtin_macro_table() { return builtin_program().macros; }

namespace {

// Records the kind each parameter is used at; reports mismatches.
void check_body(const Formula& f, const std::map<std::string, ParamKind>& declared,
                const Program& prog, const std::string& self);

void check_scope(const Scope& s, const std::map<std::string, ParamKind>& declared) {
  if (s.kind() == Scope::Kind::Param) {
    auto it = declared.find(s.param_name());
    if (it == declared.end())
      throw DefinitionError("macro body references undeclared parameter '" + s.param_name() + "'");
    if (it->second != ParamKind::Scope)
      throw DefinitionError("parameter '" + s.param_name() + "' is used as a scope but declared as a formula");
  }
  for (const auto& c : s.children()) check_scope(c, declared);
}

void check_body(const Formula& f, const std::map<std::string, ParamKind>& declared,
                const Program& prog, const std::string& self) {
  switch (f.kind()) {
    case Formula::Kind::Param: {
      auto it = declared.find(f.name());
      if (it == declared.end())
        throw DefinitionError("macro body references undeclared parameter '" + f.name() + "'");
      if (it->second != ParamKind::Formula)
        throw DefinitionError("parameter '" + f.name() + "' is used as a formula but declared as a scope");
      return;
    }
    case Formula::Kind::Forg:
    case Formula::Kind::Proj:
    case Formula::Kind::Circ:
      check_scope(f.scope(), declared);
      break;
    case Formula::Kind::MacroCall: {
      if (f.name() != self) {
        const MacroDef* m = prog.macro(f.name());
        if (!m) throw DefinitionError("macro body calls unknown macro '" + f.name() + "'");
        if (m->arity() != f.args().size())
          throw DefinitionError("macro body calls '" + f.name() + "' with wrong arity");
      }
      for (const auto& a : f.args()) {
        if (const auto* s = std::get_if<Scope>(&a))
          check_scope(*s, declared);
        else
          check_body(std::get<Formula>(a), declared, prog, self);
      }
      return;
    }
    default:
      break;
  }
  for (const auto& c : f.children()) check_body(c, declared, prog, self);
}

}  // namespace

void register_macro(Program& prog, const MacroDef& def) {
  if (prog.macro(def.name))
    throw DefinitionError("duplicate definition of macro '" + def.name + "'");
  std::map<std::string, ParamKind> declared;
  for (const auto& p : def.params) {
    if (!declared.emplace(p.name, p.kind).second)
      throw DefinitionError("duplicate parameter '" + p.name + "' in macro '" + def.name + "'");
  }
  check_body(def.body, declared, prog, def.name);
  prog.macros.push_back(def);
}

namespace {

struct Bindings {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Scope> scopes;
};

Scope bind_scope(const Scope& s, const Bindings& b) {
  return s.substitute_params([&](const std::string& name) -> std::optional<Scope> {
    auto it = b.scopes.find(name);
    if (it == b.scopes.end()) return std::nullopt;
    return it->second;
  });
}

// Instantiates a macro body. Argument formulas are spliced in unchanged.
Formula instantiate(const Formula& f, const Bindings& b) {
  switch (f.kind()) {
    case Formula::Kind::Param: {
      auto it = b.formulas.find(f.name());
      return it == b.formulas.end() ? f : it->second;
    }
    case Formula::Kind::MacroCall: {
      std::vector<MacroArg> args;
      for (const auto& a : f.args()) {
        if (const auto* s = std::get_if<Scope>(&a))
          args.emplace_back(bind_scope(*s, b));
        else
          args.emplace_back(instantiate(std::get<Formula>(a), b));
      }
      return Formula::macro_call(f.name(), std::move(args));
    }
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
      return f;
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(instantiate(c, b));
      Formula out = f.with_children(std::move(kids));
      if (f.is(Formula::Kind::Forg) || f.is(Formula::Kind::Proj) || f.is(Formula::Kind::Circ))
        out = out.with_scope(bind_scope(f.scope(), b));
      return out;
    }
  }
}

Formula expand(const Formula& f, const Program& prog, int depth, int max_depth) {
  if (f.is(Formula::Kind::MacroCall)) {
    if (depth >= max_depth)
      throw LimitError("macro expansion depth " + std::to_string(max_depth) + " exceeded at '" +
                       f.name() + "'");
    const MacroDef* m = prog.macro(f.name());
    if (!m) throw DefinitionError("unknown macro '" + f.name() + "'");
    if (m->arity() != f.args().size())
      throw DefinitionError("macro '" + f.name() + "' expects " + std::to_string(m->arity()) +
                            " argument(s), got " + std::to_string(f.args().size()));
    Bindings b;
    for (std::size_t i = 0; i < m->arity(); ++i) {
      const auto& p = m->params[i];
      const auto& a = f.args()[i];
      if (p.kind == ParamKind::Scope) {
        const auto* s = std::get_if<Scope>(&a);
        if (!s) throw DefinitionError("argument " + std::to_string(i + 1) + " of '" + f.name() + "' must be a scope");
        b.scopes.emplace(p.name, *s);
      } else {
        const auto* g = std::get_if<Formula>(&a);
        if (!g) throw DefinitionError("argument " + std::to_string(i + 1) + " of '" + f.name() + "' must be a formula");
        b.formulas.emplace(p.name, *g);
      }
    }
    return expand(instantiate(m->body, b), prog, depth + 1, max_depth);
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(expand(c, prog, depth, max_depth));
  return f.with_children(std::move(kids));
}

}  // namespace

Formula expand_macros(const Formula& f, const Program& prog, int max_depth) {
  return expand(f, prog, 0, max_depth);
}

}  // namespace elimkit
