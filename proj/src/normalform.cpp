#include "elimkit/normalform.hpp"

#include <algorithm>

#include "elimkit/error.hpp"
#include "elimkit/interpretation.hpp"

namespace elimkit {

Clause make_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

bool is_tautology(const Clause& c) {
  // Sorted order puts +a directly before -a.
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i - 1].atom == c[i].atom) return true;
  return false;
}

bool subsumes(const Clause& small, const Clause& big) {
  return small.size() <= big.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

AtomSet ClauseSet::signature() const {
  AtomSet out;
  for (const auto& c : clauses)
    for (const auto& l : c) out.insert(l.atom);
  return out;
}

ClauseSet simplify_clauses(const ClauseSet& c, ClauseMode) {
  std::vector<const Clause*> order;
  for (const auto& cl : c.clauses)
    if (!is_tautology(cl)) order.push_back(&cl);
  std::stable_sort(order.begin(), order.end(),
                   [](const Clause* a, const Clause* b) { return a->size() < b->size(); });
  std::vector<const Clause*> kept;
  ClauseSet out;
  for (const Clause* cl : order) {
    bool subsumed = false;
    for (const Clause* k : kept)
      if (subsumes(*k, *cl)) {
        subsumed = true;
        break;
      }
    if (!subsumed) {
      kept.push_back(cl);
      out.clauses.insert(*cl);
    }
  }
  return out;
}

namespace {

Clause merge(const Clause& a, const Clause& b) {
  Clause out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// CNF of `f` (in NNF) when `cnf` is set, otherwise DNF. The two are dual:
// the "outer" connective is the one that unions clause sets.
std::optional<ClauseSet> normal_form(const Formula& f, bool cnf, std::size_t limit) {
  using K = Formula::Kind;
  const K outer = cnf ? K::And : K::Or;
  const K inner = cnf ? K::Or : K::And;
  ClauseSet out;
  if (f.is(K::True) || f.is(K::False)) {
    // CNF: true = {}, false = {{}}. DNF: true = {{}}, false = {}.
    bool value = f.is(K::True);
    if (value != cnf) out.clauses.insert(Clause{});
    return out;
  }
  if (f.is(K::Atom)) {
    out.clauses.insert(Clause{pos(f.atom())});
    return out;
  }
  if (f.is(K::Not)) {
    out.clauses.insert(Clause{neg(f.child().atom())});
    return out;
  }
  auto a = normal_form(f.lhs(), cnf, limit);
  if (!a) return std::nullopt;
  auto b = normal_form(f.rhs(), cnf, limit);
  if (!b) return std::nullopt;
  const ClauseMode mode = cnf ? ClauseMode::Cnf : ClauseMode::Dnf;
  if (f.is(outer)) {
    out = std::move(*a);
    out.clauses.insert(b->clauses.begin(), b->clauses.end());
  } else if (f.is(inner)) {
    if (limit && a->size() * b->size() > limit * 4) return std::nullopt;
    for (const auto& x : a->clauses)
      for (const auto& y : b->clauses) {
        Clause m = merge(x, y);
        if (!is_tautology(m)) out.clauses.insert(std::move(m));
      }
  } else {
    throw PreconditionError("normal form conversion expects NNF");
  }
  out = simplify_clauses(out, mode);
  if (limit && out.size() > limit) return std::nullopt;
  return out;
}

}  // namespace

std::optional<ClauseSet> try_to_cnf(const Formula& f, std::size_t max_clauses) {
  require_operator_free(f, "to_cnf");
  return normal_form(to_nnf(f), true, max_clauses);
}

std::optional<ClauseSet> try_to_dnf(const Formula& f, std::size_t max_clauses) {
  require_operator_free(f, "to_dnf");
  return normal_form(to_nnf(f), false, max_clauses);
}

ClauseSet to_cnf(const Formula& f) { return *try_to_cnf(f, 0); }
ClauseSet to_dnf(const Formula& f) { return *try_to_dnf(f, 0); }

ClauseSet full_dnf(const Formula& f, const AtomSet& sig, std::size_t bound) {
  require_operator_free(f, "full_dnf");
  if (sig.size() > bound || sig.size() >= 63)
    throw BoundError("full_dnf: signature of " + std::to_string(sig.size()) +
                     " atoms exceeds the bound of " + std::to_string(bound));
  ClauseSet out;
  const std::uint64_t n = std::uint64_t{1} << sig.size();
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    Interpretation interp(sig, bits);
    if (!evaluate(f, interp)) continue;
    auto lits = interp.literals();
    out.clauses.insert(Clause(lits.begin(), lits.end()));
  }
  return out;
}

namespace {

Formula clause_formula(const Clause& c, bool disjunctive) {
  std::vector<Formula> lits;
  for (const auto& l : c) lits.push_back(Formula::literal(l));
  return disjunctive ? Formula::disj(lits) : Formula::conj(lits);
}

}  // namespace

Formula cnf_formula(const ClauseSet& c) {
  std::vector<Formula> parts;
  for (const auto& cl : c.clauses) parts.push_back(clause_formula(cl, true));
  return Formula::conj(parts);
}

Formula dnf_formula(const ClauseSet& c) {
  std::vector<Formula> parts;
  for (const auto& cl : c.clauses) parts.push_back(clause_formula(cl, false));
  return Formula::disj(parts);
}

}  // namespace elimkit
