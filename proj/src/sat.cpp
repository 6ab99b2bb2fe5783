#include "elimkit/sat.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "elimkit/error.hpp"

namespace elimkit {

namespace {

const std::string kDefinitionalBase = "def'";

Atom definitional_atom(std::size_t i) {
  return Atom(kDefinitionalBase, kDefinitionalGroup, {Term::constant(std::to_string(i))});
}

bool is_clause_shape(const Formula& f) {
  if (f.is_literal() || f.is_constant()) return true;
  if (f.is(Formula::Kind::Or)) return is_clause_shape(f.lhs()) && is_clause_shape(f.rhs());
  return false;
}

bool is_cnf_shape(const Formula& f) {
  if (f.is(Formula::Kind::And)) return is_cnf_shape(f.lhs()) && is_cnf_shape(f.rhs());
  return is_clause_shape(f);
}

// Appends the literals of a clause-shaped formula; returns false when the
// clause contains `true`.
bool collect_clause(const Formula& f, std::vector<Literal>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return false;
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      out.push_back(pos(f.atom()));
      return true;
    case Formula::Kind::Not:
      out.push_back(neg(f.child().atom()));
      return true;
    default:
      return collect_clause(f.lhs(), out) && collect_clause(f.rhs(), out);
  }
}

void collect_cnf(const Formula& f, ClauseSet& out) {
  if (f.is(Formula::Kind::And)) {
    collect_cnf(f.lhs(), out);
    collect_cnf(f.rhs(), out);
    return;
  }
  std::vector<Literal> lits;
  if (collect_clause(f, lits)) {
    Clause c = make_clause(std::move(lits));
    if (!is_tautology(c)) out.clauses.insert(std::move(c));
  }
}

void flatten(const Formula& f, Formula::Kind k, std::vector<Formula>& out) {
  if (f.is(k)) {
    flatten(f.lhs(), k, out);
    flatten(f.rhs(), k, out);
  } else {
    out.push_back(f);
  }
}

class Definitions {
 public:
  // Literal standing for `f` (in NNF, constant-free) such that the emitted
  // clauses force `f` whenever the literal is true.
  Literal define(const Formula& f) {
    if (f.is(Formula::Kind::Atom)) return pos(f.atom());
    if (f.is(Formula::Kind::Not)) return neg(f.child().atom());
    const bool is_and = f.is(Formula::Kind::And);
    std::vector<Formula> parts;
    flatten(f, f.kind(), parts);
    std::vector<Literal> lits;
    for (const auto& p : parts) lits.push_back(define(p));
    Literal d = pos(definitional_atom(next_++));
    if (is_and) {
      for (const auto& l : lits) add({d.complement(), l});
    } else {
      lits.push_back(d.complement());
      add(std::move(lits));
    }
    return d;
  }

  void add(std::vector<Literal> lits) {
    Clause c = make_clause(std::move(lits));
    if (!is_tautology(c)) out.clauses.insert(std::move(c));
  }

  ClauseSet out;

 private:
  std::size_t next_ = 0;
};

}  // namespace

bool is_definitional(const Atom& a) {
  return a.group() == kDefinitionalGroup && a.base() == kDefinitionalBase;
}

ClauseSet clausify_equisat(const Formula& f) {
  require_operator_free(f, "clausify_equisat");
  ClauseSet out;
  if (is_cnf_shape(f)) {
    collect_cnf(f, out);
    return out;
  }
  Formula g = simplify_constants(to_nnf(f));
  if (g.is(Formula::Kind::True)) return out;
  if (g.is(Formula::Kind::False)) {
    out.clauses.insert(Clause{});
    return out;
  }
  Definitions defs;
  // Top-level conjuncts become clauses of their own definitions.
  std::vector<Formula> conjuncts;
  flatten(g, Formula::Kind::And, conjuncts);
  for (const auto& c : conjuncts) {
    if (is_clause_shape(c)) {
      std::vector<Literal> lits;
      collect_clause(c, lits);
      defs.add(std::move(lits));
    } else {
      defs.add({defs.define(c)});
    }
  }
  return std::move(defs.out);
}

namespace {

// Literals are encoded as 2*var + (negative ? 1 : 0).
class Dpll {
 public:
  explicit Dpll(const ClauseSet& c) {
    for (const auto& a : c.signature()) {
      index_.emplace(a, atoms_.size());
      atoms_.push_back(a);
    }
    for (const auto& cl : c.clauses) {
      std::vector<int> lits;
      for (const auto& l : cl) lits.push_back(encode(l));
      clauses_.push_back(std::move(lits));
    }
  }

  SatResult run() {
    std::vector<signed char> assign(atoms_.size(), -1);
    SatResult r;
    if (search(clauses_, assign)) {
      r.satisfiable = true;
      for (std::size_t i = 0; i < atoms_.size(); ++i) r.model.emplace(atoms_[i], assign[i] == 1);
    }
    return r;
  }

 private:
  int encode(const Literal& l) const { return static_cast<int>(2 * index_.at(l.atom) + (l.positive ? 0 : 1)); }

  using Clauses = std::vector<std::vector<int>>;

  // Removes satisfied clauses and false literals under `assign`. Returns
  // false if a clause becomes empty.
  static bool reduce(const Clauses& in, const std::vector<signed char>& assign, Clauses& out) {
    out.clear();
    for (const auto& c : in) {
      std::vector<int> kept;
      bool sat = false;
      for (int l : c) {
        signed char v = assign[static_cast<std::size_t>(l >> 1)];
        if (v < 0) {
          kept.push_back(l);
        } else if ((v == 1) != (l & 1)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (kept.empty()) return false;
      out.push_back(std::move(kept));
    }
    return true;
  }

  bool search(const Clauses& in, std::vector<signed char>& assign) {
    Clauses cur;
    if (!reduce(in, assign, cur)) return false;
    for (;;) {
      bool changed = false;
      // Unit propagation.
      for (const auto& c : cur)
        if (c.size() == 1) {
          assign[static_cast<std::size_t>(c[0] >> 1)] = (c[0] & 1) ? 0 : 1;
          changed = true;
        }
      // Pure literals.
      if (!changed) {
        std::vector<unsigned char> seen(atoms_.size(), 0);
        for (const auto& c : cur)
          for (int l : c) seen[static_cast<std::size_t>(l >> 1)] |= (l & 1) ? 2 : 1;
        for (std::size_t v = 0; v < seen.size(); ++v)
          if (seen[v] == 1 || seen[v] == 2) {
            assign[v] = seen[v] == 1 ? 1 : 0;
            changed = true;
          }
      }
      if (!changed) break;
      Clauses next;
      if (!reduce(cur, assign, next)) return false;
      cur = std::move(next);
    }
    if (cur.empty()) return true;
    std::vector<std::size_t> freq(atoms_.size(), 0);
    for (const auto& c : cur)
      for (int l : c) ++freq[static_cast<std::size_t>(l >> 1)];
    // Atoms are indexed in name order, so the first maximum is the
    // lexicographically smallest.
    std::size_t best = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    for (signed char value : {1, 0}) {
      std::vector<signed char> trial = assign;
      trial[best] = value;
      if (search(cur, trial)) {
        assign = std::move(trial);
        return true;
      }
    }
    return false;
  }

  std::vector<Atom> atoms_;
  std::map<Atom, std::size_t> index_;
  Clauses clauses_;
};

}  // namespace

SatResult solve_cnf(const ClauseSet& c) {
  if (c.has_empty_clause()) return SatResult{};
  return Dpll(c).run();
}

bool satisfiable(const Formula& f) { return solve_cnf(clausify_equisat(f)).satisfiable; }

namespace {

bool closed_under(const Formula& f, AtomSet& bound, const AtomSet& sig) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return bound.count(f.atom()) > 0;
    case Formula::Kind::Forg: {
      auto lits = ground_scope(f.scope(), sig);
      std::vector<Atom> added;
      for (const auto& l : lits)
        if (l.positive && lits.count(l.complement()) && bound.insert(l.atom).second) added.push_back(l.atom);
      bool ok = closed_under(f.child(), bound, sig);
      for (const auto& a : added) bound.erase(a);
      return ok;
    }
    default:
      if (is_second_order(f.kind())) return false;
      for (const auto& c : f.children())
        if (!closed_under(c, bound, sig)) return false;
      return true;
  }
}

// Eliminates every Forg node innermost-first by expansion.
Formula expand_closed(const Formula& f, const AtomSet& sig) {
  if (f.is(Formula::Kind::Forg)) {
    Formula g = expand_closed(f.child(), sig);
    auto lits = ground_scope(f.scope(), sig);
    for (const auto& a : plain_atoms(g)) {
      const bool p = lits.count(pos(a)) > 0, n = lits.count(neg(a)) > 0;
      if (p && n) {
        g = Formula::disj(substitute(g, a, Formula::top()), substitute(g, a, Formula::bottom()));
      } else if (p) {
        g = Formula::disj(g, Formula::conj(Formula::negation(Formula::atom(a)), substitute(g, a, Formula::top())));
      } else if (n) {
        g = Formula::disj(g, Formula::conj(Formula::atom(a), substitute(g, a, Formula::bottom())));
      }
      g = simplify_constants(g);
    }
    return g;
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(expand_closed(c, sig));
  return simplify_constants(f.with_children(std::move(kids)));
}

}  // namespace

bool is_closed(const Formula& f) {
  AtomSet bound;
  return closed_under(f, bound, atoms_of(f));
}

bool decide_closed(const Formula& f) {
  if (!is_closed(f)) throw PreconditionError("decide_closed: formula is not closed");
  Formula g = expand_closed(f, atoms_of(f));
  if (g.is(Formula::Kind::True)) return true;
  if (g.is(Formula::Kind::False)) return false;
  // A closed formula always simplifies to a constant; anything else is a bug.
  throw Error("decide_closed: expansion did not reach a constant");
}

}  // namespace elimkit
