#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elimkit/formula.hpp"

namespace elimkit {

enum class ParamKind { Formula, Scope };

struct MacroParam {
  std::string name;
  ParamKind kind = ParamKind::Formula;
  friend bool operator==(const MacroParam&, const MacroParam&) = default;
};

/// Named parametric rewrite rule: a call `name(args)` expands to `body`
/// with parameters replaced positionally.
struct MacroDef {
  std::string name;
  std::vector<MacroParam> params;
  Formula body;

  std::size_t arity() const { return params.size(); }
};

/// Loaded problem file: named formulas, macros and the finite domain used
/// for quantifier expansion. Insertion order is kept for listing.
struct Program {
  std::vector<std::pair<std::string, Formula>> definitions;
  std::vector<MacroDef> macros;
  std::vector<std::string> domain;

  const Formula* definition(const std::string& name) const;
  const MacroDef* macro(const std::string& name) const;
  /// Macro with the given name and arity, if any.
  const MacroDef* macro(const std::string& name, std::size_t arity) const;

  /// Throws DefinitionError if the name is already bound.
  void define(const std::string& name, Formula f);
};

}  // namespace elimkit
