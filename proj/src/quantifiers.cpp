#include "elimkit/quantifiers.hpp"

#include "elimkit/error.hpp"

namespace elimkit {

namespace {

Term bind_term(const Term& t, const std::string& var, const std::string& value) {
  if (t.variable) return t.name == var ? Term::constant(value) : t;
  Term out{t.name, {}, false};
  for (const auto& a : t.args) out.args.push_back(bind_term(a, var, value));
  return out;
}

Atom bind_atom(const Atom& a, const std::string& var, const std::string& value) {
  if (a.args().empty()) return a;
  std::vector<Term> args;
  for (const auto& t : a.args()) args.push_back(bind_term(t, var, value));
  return a.with_args(std::move(args));
}

Formula bind(const Formula& f, const std::string& var, const std::string& value) {
  // An inner quantifier over the same variable shadows the outer one.
  if ((f.is(Formula::Kind::ForAll) || f.is(Formula::Kind::Exists)) && f.name() == var) return f;
  if (f.is(Formula::Kind::Atom)) return Formula::atom(bind_atom(f.atom(), var, value));
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(bind(c, var, value));
  Formula out = f.with_children(std::move(kids));
  if (f.is(Formula::Kind::Forg) || f.is(Formula::Kind::Proj) || f.is(Formula::Kind::Circ))
    out = out.with_scope(f.scope().map_atoms([&](const Atom& a) { return bind_atom(a, var, value); }));
  return out;
}

void check_ground(const Atom& a) {
  if (!a.ground())
    throw PreconditionError("unbound variable in atom '" + a.name() + "'");
}

void check_scope_ground(const Scope& s) {
  if (s.kind() == Scope::Kind::Item) check_ground(s.atom());
  for (const auto& c : s.children()) check_scope_ground(c);
}

Formula expand(const Formula& f, const std::vector<std::string>& domain) {
  switch (f.kind()) {
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      if (domain.empty())
        throw PreconditionError("quantifier over '" + f.name() + "' needs a nonempty domain");
      std::vector<Formula> parts;
      for (const auto& c : domain) parts.push_back(expand(bind(f.child(), f.name(), c), domain));
      return f.is(Formula::Kind::ForAll) ? Formula::conj(parts) : Formula::disj(parts);
    }
    case Formula::Kind::Atom:
      check_ground(f.atom());
      return f;
    default: {
      if (f.is(Formula::Kind::Forg) || f.is(Formula::Kind::Proj) || f.is(Formula::Kind::Circ))
        check_scope_ground(f.scope());
      if (f.children().empty()) return f;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(expand(c, domain));
      return f.with_children(std::move(kids));
    }
  }
}

}  // namespace

Formula expand_quantifiers(const Formula& f, const std::vector<std::string>& domain) {
  return expand(f, domain);
}

}  // namespace elimkit
