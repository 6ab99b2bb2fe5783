#include "elimkit/formula.hpp"

#include "elimkit/error.hpp"
#include "elimkit/interpretation.hpp"

namespace elimkit {

using K = Formula::Kind;

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula t = make(Node{K::True, {}, {}, {}, {}, {}, {}});
  return t;
}

Formula Formula::bottom() {
  static const Formula f = make(Node{K::False, {}, {}, {}, {}, {}, {}});
  return f;
}

Formula Formula::atom(Atom a) {
  Node n;
  n.kind = K::Atom;
  n.atom = std::move(a);
  return make(std::move(n));
}

Formula Formula::literal(const Literal& l) {
  return l.positive ? atom(l.atom) : negation(atom(l.atom));
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = K::Not;
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  Node n;
  n.kind = K::And;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  Node n;
  n.kind = K::Or;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  Node n;
  n.kind = K::Implies;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::implied_by(Formula a, Formula b) {
  Node n;
  n.kind = K::ImpliedBy;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::equiv(Formula a, Formula b) {
  Node n;
  n.kind = K::Equiv;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

Formula Formula::disj(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = disj(out, parts[i]);
  return out;
}

Formula Formula::forg(Scope s, Formula f) {
  Node n;
  n.kind = K::Forg;
  n.scope = std::move(s);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::proj(Scope s, Formula f) {
  Node n;
  n.kind = K::Proj;
  n.scope = std::move(s);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::circ(Scope s, Formula f) {
  Node n;
  n.kind = K::Circ;
  n.scope = std::move(s);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::rename(std::vector<RenamePair> pairs, Formula f) {
  Node n;
  n.kind = K::Rename;
  n.pairs = std::move(pairs);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::macro_call(std::string name, std::vector<MacroArg> args) {
  Node n;
  n.kind = K::MacroCall;
  n.name = std::move(name);
  n.args = std::move(args);
  return make(std::move(n));
}

Formula Formula::forall(std::string var, Formula f) {
  Node n;
  n.kind = K::ForAll;
  n.name = std::move(var);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::exists(std::string var, Formula f) {
  Node n;
  n.kind = K::Exists;
  n.name = std::move(var);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::param(std::string name) {
  Node n;
  n.kind = K::Param;
  n.name = std::move(name);
  return make(std::move(n));
}

bool Formula::is_literal() const {
  return is(K::Atom) || (is(K::Not) && child().is(K::Atom));
}

Formula Formula::with_children(std::vector<Formula> kids) const {
  if (kids.size() == children().size()) {
    bool same_kids = true;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (!kids[i].same(children()[i])) same_kids = false;
    if (same_kids) return *this;
  }
  Node n = *node_;
  n.children = std::move(kids);
  return make(std::move(n));
}

Formula Formula::with_scope(Scope s) const {
  Node n = *node_;
  n.scope = std::move(s);
  return make(std::move(n));
}

bool is_second_order(K k) {
  switch (k) {
    case K::Forg:
    case K::Proj:
    case K::Circ:
    case K::Rename:
    case K::MacroCall:
    case K::ForAll:
    case K::Exists:
    case K::Param:
      return true;
    default:
      return false;
  }
}

bool Formula::operator_free() const {
  if (is_second_order(kind())) return false;
  for (const auto& c : children())
    if (!c.operator_free()) return false;
  return true;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Atom:
      return a.atom() == b.atom();
    case K::Forg:
    case K::Proj:
    case K::Circ:
      if (!(a.scope() == b.scope())) return false;
      break;
    case K::Rename:
      if (a.pairs() != b.pairs()) return false;
      break;
    case K::ForAll:
    case K::Exists:
    case K::Param:
      if (a.name() != b.name()) return false;
      break;
    case K::MacroCall:
      return a.name() == b.name() && a.args() == b.args();
    default:
      break;
  }
  return a.children() == b.children();
}

void require_operator_free(const Formula& f, const char* where) {
  if (!f.operator_free())
    throw PreconditionError(std::string(where) + ": formula contains second-order operators");
}

Atom rename_atom(const Atom& a, const std::vector<RenamePair>& pairs) {
  for (const auto& p : pairs)
    if (a.group() == p.from) return a.with_group(p.to);
  return a;
}

namespace {

void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.kind()) {
    case K::Atom:
      out.insert(f.atom());
      return;
    case K::Forg:
    case K::Proj:
    case K::Circ:
      f.scope().collect_atoms(out);
      break;
    case K::Rename: {
      AtomSet inner;
      collect_atoms(f.child(), inner);
      for (const auto& a : inner) {
        out.insert(a);
        out.insert(rename_atom(a, f.pairs()));
      }
      return;
    }
    case K::MacroCall:
      for (const auto& arg : f.args()) {
        if (const auto* s = std::get_if<Scope>(&arg))
          s->collect_atoms(out);
        else
          collect_atoms(std::get<Formula>(arg), out);
      }
      return;
    default:
      break;
  }
  for (const auto& c : f.children()) collect_atoms(c, out);
}

void collect_plain(const Formula& f, AtomSet& out) {
  if (f.is(K::Atom)) {
    out.insert(f.atom());
    return;
  }
  for (const auto& c : f.children()) collect_plain(c, out);
}

}  // namespace

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

AtomSet plain_atoms(const Formula& f) {
  AtomSet out;
  collect_plain(f, out);
  return out;
}

Formula substitute(const Formula& f, const std::map<Atom, Formula>& subst) {
  if (f.is(K::Atom)) {
    auto it = subst.find(f.atom());
    return it == subst.end() ? f : it->second;
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(substitute(c, subst));
  return f.with_children(std::move(kids));
}

Formula substitute(const Formula& f, const Atom& a, const Formula& replacement) {
  require_operator_free(f, "substitute");
  require_operator_free(replacement, "substitute");
  return substitute(f, std::map<Atom, Formula>{{a, replacement}});
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case K::True:
      return negated ? Formula::bottom() : f;
    case K::False:
      return negated ? Formula::top() : f;
    case K::Atom:
      return negated ? Formula::negation(f) : f;
    case K::Not:
      return nnf(f.child(), !negated);
    case K::And:
      return negated ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Or:
      return negated ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Implies:
      return negated ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case K::ImpliedBy:
      return negated ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), false))
                     : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), true));
    case K::Equiv: {
      // a <-> b  ==  (a | ~b) & (~a | b);  ~(a <-> b)  ==  (a | b) & (~a | ~b)
      auto a = nnf(f.lhs(), false), na = nnf(f.lhs(), true);
      auto b = nnf(f.rhs(), false), nb = nnf(f.rhs(), true);
      return negated ? Formula::conj(Formula::disj(a, b), Formula::disj(na, nb))
                     : Formula::conj(Formula::disj(a, nb), Formula::disj(na, b));
    }
    default:
      throw PreconditionError("to_nnf: formula contains second-order operators");
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula simplify_constants(const Formula& f) {
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(simplify_constants(c));
  const auto t = [](const Formula& x) { return x.is(K::True); };
  const auto b = [](const Formula& x) { return x.is(K::False); };
  switch (f.kind()) {
    case K::Not: {
      const auto& c = kids[0];
      if (t(c)) return Formula::bottom();
      if (b(c)) return Formula::top();
      if (c.is(K::Not)) return c.child();
      break;
    }
    case K::And:
      if (b(kids[0]) || b(kids[1])) return Formula::bottom();
      if (t(kids[0])) return kids[1];
      if (t(kids[1])) return kids[0];
      break;
    case K::Or:
      if (t(kids[0]) || t(kids[1])) return Formula::top();
      if (b(kids[0])) return kids[1];
      if (b(kids[1])) return kids[0];
      break;
    case K::Implies:
    case K::ImpliedBy: {
      const auto& ante = f.is(K::Implies) ? kids[0] : kids[1];
      const auto& cons = f.is(K::Implies) ? kids[1] : kids[0];
      if (b(ante) || t(cons)) return Formula::top();
      if (t(ante)) return cons;
      if (b(cons)) return simplify_constants(Formula::negation(ante));
      break;
    }
    case K::Equiv:
      if (t(kids[0])) return kids[1];
      if (t(kids[1])) return kids[0];
      if (b(kids[0])) return simplify_constants(Formula::negation(kids[1]));
      if (b(kids[1])) return simplify_constants(Formula::negation(kids[0]));
      break;
    case K::Forg:
    case K::Proj:
    case K::Circ:
      if (kids[0].is_constant()) return kids[0];
      break;
    case K::Rename:
      if (kids[0].is_constant()) return kids[0];
      break;
    default:
      break;
  }
  return f.with_children(std::move(kids));
}

bool evaluate(const Formula& f, const Interpretation& interp) {
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return interp.value(f.atom());
    case K::Not:
      return !evaluate(f.child(), interp);
    case K::And:
      return evaluate(f.lhs(), interp) && evaluate(f.rhs(), interp);
    case K::Or:
      return evaluate(f.lhs(), interp) || evaluate(f.rhs(), interp);
    case K::Implies:
      return !evaluate(f.lhs(), interp) || evaluate(f.rhs(), interp);
    case K::ImpliedBy:
      return evaluate(f.lhs(), interp) || !evaluate(f.rhs(), interp);
    case K::Equiv:
      return evaluate(f.lhs(), interp) == evaluate(f.rhs(), interp);
    default:
      throw PreconditionError("evaluate: formula contains second-order operators");
  }
}

namespace {

Polarity join(Polarity a, Polarity b) {
  if (a == Polarity::None) return b;
  if (b == Polarity::None || a == b) return a;
  return Polarity::Both;
}

void walk_polarity(const Formula& f, bool positive, std::map<Atom, Polarity>& out) {
  switch (f.kind()) {
    case K::True:
    case K::False:
      return;
    case K::Atom: {
      auto& p = out[f.atom()];
      p = join(p, positive ? Polarity::Pos : Polarity::Neg);
      return;
    }
    case K::Not:
      walk_polarity(f.child(), !positive, out);
      return;
    case K::And:
    case K::Or:
      walk_polarity(f.lhs(), positive, out);
      walk_polarity(f.rhs(), positive, out);
      return;
    case K::Implies:
      walk_polarity(f.lhs(), !positive, out);
      walk_polarity(f.rhs(), positive, out);
      return;
    case K::ImpliedBy:
      walk_polarity(f.lhs(), positive, out);
      walk_polarity(f.rhs(), !positive, out);
      return;
    case K::Equiv:
      walk_polarity(f.lhs(), positive, out);
      walk_polarity(f.lhs(), !positive, out);
      walk_polarity(f.rhs(), positive, out);
      walk_polarity(f.rhs(), !positive, out);
      return;
    default:
      throw PreconditionError("polarity_of_atom: formula contains second-order operators");
  }
}

}  // namespace

std::map<Atom, Polarity> polarities(const Formula& f) {
  std::map<Atom, Polarity> out;
  walk_polarity(f, true, out);
  return out;
}

Polarity polarity_of_atom(const Formula& f, const Atom& a) {
  auto all = polarities(f);
  auto it = all.find(a);
  return it == all.end() ? Polarity::None : it->second;
}

}  // namespace elimkit
