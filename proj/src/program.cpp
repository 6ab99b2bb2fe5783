#include "elimkit/program.hpp"

#include "elimkit/error.hpp"

namespace elimkit {

const Formula* Program::definition(const std::string& name) const {
  for (const auto& [n, f] : definitions)
    if (n == name) return &f;
  return nullptr;
}

const MacroDef* Program::macro(const std::string& name) const {
  for (const auto& m : macros)
    if (m.name == name) return &m;
  return nullptr;
}

const MacroDef* Program::macro(const std::string& name, std::size_t arity) const {
  for (const auto& m : macros)
    if (m.name == name && m.arity() == arity) return &m;
  return nullptr;
}

void Program::define(const std::string& name, Formula f) {
  if (definition(name)) throw DefinitionError("duplicate definition of '" + name + "'");
  definitions.emplace_back(name, std::move(f));
}

}  // namespace elimkit
