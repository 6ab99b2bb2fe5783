#include "elimkit/engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "elimkit/error.hpp"
#include "elimkit/macros.hpp"
#include "elimkit/quantifiers.hpp"
#include "elimkit/sat.hpp"

namespace elimkit {

using K = Formula::Kind;

LiteralSet scope_literals(const Scope& s) { return ground_scope(s, AtomSet{}); }

std::uint32_t reserved_prime_group(const AtomSet& sig) {
  std::uint32_t max_group = 0;
  for (const auto& a : sig)
    if (a.group() != kDefinitionalGroup) max_group = std::max(max_group, a.group());
  return max_group + 1;
}

namespace {

Atom primed(const Atom& a, std::uint32_t group) {
  return Atom(a.base() + "'" + std::to_string(a.group()) + "'", group, a.args());
}

bool only_forgetting(const Formula& f) {
  if (is_second_order(f.kind()) && !f.is(K::Forg)) return false;
  return std::all_of(f.children().begin(), f.children().end(), only_forgetting);
}

}  // namespace

Formula build_circ_reduction(const Scope& s, const Formula& g, const AtomSet& sig) {
  if (!only_forgetting(g)) throw PreconditionError("build_circ_reduction: argument may only contain forgetting");
  const LiteralSet lits = ground_scope(s, sig);
  AtomSet universe = sig;
  for (const auto& a : atoms_of(g)) universe.insert(a);
  for (const auto& l : lits) universe.insert(l.atom);

  std::vector<Atom> minimized, maximized;
  std::map<Atom, Atom> renaming;
  const std::uint32_t group = reserved_prime_group(universe);
  for (const auto& a : universe) {
    const bool p = lits.count(pos(a)) > 0, n = lits.count(neg(a)) > 0;
    if (p && n) continue;  // fixed: shared between both copies
    if (p) minimized.push_back(a);
    if (n) maximized.push_back(a);
    renaming.emplace(a, primed(a, group));
  }
  if (minimized.empty() && maximized.empty()) return g;

  const Formula g_primed = map_atoms(g, [&](const Atom& a) {
    auto it = renaming.find(a);
    return it == renaming.end() ? a : it->second;
  });
  std::vector<Formula> parts{g_primed};
  std::vector<Formula> strict;
  for (const auto& a : minimized) {
    Formula x = Formula::atom(a), xp = Formula::atom(renaming.at(a));
    parts.push_back(Formula::implies(xp, x));
    strict.push_back(Formula::conj(x, Formula::negation(xp)));
  }
  for (const auto& a : maximized) {
    Formula x = Formula::atom(a), xp = Formula::atom(renaming.at(a));
    parts.push_back(Formula::implies(x, xp));
    strict.push_back(Formula::conj(Formula::negation(x), xp));
  }
  parts.push_back(Formula::disj(strict));
  LiteralSet primed_lits;
  for (const auto& [orig, copy] : renaming) {
    primed_lits.insert(pos(copy));
    primed_lits.insert(neg(copy));
  }
  Formula smaller = Formula::forg(Scope::of(primed_lits), Formula::conj(parts));
  return Formula::conj(g, Formula::negation(smaller));
}

Formula shannon_step(const Formula& g, const Atom& p) {
  Formula x = Formula::atom(p);
  return simplify_constants(Formula::disj(Formula::conj(x, substitute(g, p, Formula::top())),
                                          Formula::conj(Formula::negation(x), substitute(g, p, Formula::bottom()))));
}

ClauseSet dp_forget_atom(const ClauseSet& c, const Atom& a) {
  std::vector<const Clause*> with_pos, with_neg;
  ClauseSet out;
  for (const auto& cl : c.clauses) {
    bool p = std::find(cl.begin(), cl.end(), pos(a)) != cl.end();
    bool n = std::find(cl.begin(), cl.end(), neg(a)) != cl.end();
    if (p && n) continue;  // tautology
    if (p) with_pos.push_back(&cl);
    else if (n) with_neg.push_back(&cl);
    else out.clauses.insert(cl);
  }
  for (const Clause* pc : with_pos)
    for (const Clause* nc : with_neg) {
      std::vector<Literal> lits;
      for (const auto& l : *pc)
        if (!(l.atom == a)) lits.push_back(l);
      for (const auto& l : *nc)
        if (!(l.atom == a)) lits.push_back(l);
      Clause r = make_clause(std::move(lits));
      if (!is_tautology(r)) out.clauses.insert(std::move(r));
    }
  return simplify_clauses(out, ClauseMode::Cnf);
}

namespace {

// Constant folding at one node whose children are already folded.
Formula fold(const Formula& f) {
  const auto t = [](const Formula& x) { return x.is(K::True); };
  const auto b = [](const Formula& x) { return x.is(K::False); };
  switch (f.kind()) {
    case K::Not: {
      const auto& c = f.child();
      if (t(c)) return Formula::bottom();
      if (b(c)) return Formula::top();
      if (c.is(K::Not)) return c.child();
      return f;
    }
    case K::And:
      if (b(f.lhs()) || b(f.rhs())) return Formula::bottom();
      if (t(f.lhs())) return f.rhs();
      if (t(f.rhs())) return f.lhs();
      return f;
    case K::Or:
      if (t(f.lhs()) || t(f.rhs())) return Formula::top();
      if (b(f.lhs())) return f.rhs();
      if (b(f.rhs())) return f.lhs();
      return f;
    case K::Implies:
    case K::ImpliedBy:
    case K::Equiv:
      if (f.lhs().is_constant() || f.rhs().is_constant()) return simplify_constants(f);
      return f;
    case K::Forg:
    case K::Rename:
      if (f.child().is_constant()) return f.child();
      return f;
    default:
      return f;
  }
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.is(K::And)) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

AtomSet literal_atoms(const LiteralSet& lits) {
  AtomSet out;
  for (const auto& l : lits) out.insert(l.atom);
  return out;
}

bool intersects(const AtomSet& a, const AtomSet& b) {
  for (const auto& x : a)
    if (b.count(x)) return true;
  return false;
}

// Rewrites at a Forg node; nullopt if no rule applies.
std::optional<Formula> rewrite_forg(const Formula& node, const EngineConfig& cfg) {
  const Formula& body = node.child();
  LiteralSet lits = scope_literals(node.scope());
  if (body.is_constant()) return body;

  if (cfg.merge_forgetting && body.is(K::Forg)) {
    auto inner = scope_literals(body.scope());
    lits.insert(inner.begin(), inner.end());
    return Formula::forg(Scope::of(lits), body.child());
  }

  const AtomSet body_atoms = atoms_of(body);
  LiteralSet relevant;
  for (const auto& l : lits)
    if (body_atoms.count(l.atom)) relevant.insert(l);
  if (relevant.empty()) return body;
  if (relevant.size() != lits.size()) return Formula::forg(Scope::of(relevant), body);

  const Scope& scope = node.scope();
  if (body.is(K::Or)) return Formula::disj(Formula::forg(scope, body.lhs()), Formula::forg(scope, body.rhs()));

  const AtomSet scope_atoms = literal_atoms(lits);
  if (body.is(K::And)) {
    std::vector<Formula> parts, dependent, independent;
    flatten_and(body, parts);
    for (const auto& p : parts) (intersects(atoms_of(p), scope_atoms) ? dependent : independent).push_back(p);
    if (!independent.empty())
      return Formula::conj(Formula::forg(scope, Formula::conj(dependent)), Formula::conj(independent));
  }

  if (!body.operator_free()) return std::nullopt;

  // Purity: an atom of one polarity is set to the value that makes the
  // argument weakest when its matching literal is forgotten; a forgotten
  // literal of the opposite polarity is useless and dropped.
  const auto pol = polarities(body);
  std::map<Atom, Formula> subst;
  LiteralSet kept = lits;
  for (const auto& a : scope_atoms) {
    auto it = pol.find(a);
    if (it == pol.end()) continue;
    const bool p = lits.count(pos(a)) > 0, n = lits.count(neg(a)) > 0;
    if (it->second == Polarity::Pos) {
      if (p) {
        subst.emplace(a, Formula::top());
        kept.erase(pos(a));
        kept.erase(neg(a));
      } else {
        kept.erase(neg(a));
      }
    } else if (it->second == Polarity::Neg) {
      if (n) {
        subst.emplace(a, Formula::bottom());
        kept.erase(pos(a));
        kept.erase(neg(a));
      } else {
        kept.erase(pos(a));
      }
    }
  }
  if (kept.size() != lits.size()) {
    Formula reduced = subst.empty() ? body : simplify_constants(substitute(body, subst));
    return Formula::forg(Scope::of(kept), reduced);
  }

  // Single-sign literal forgetting:
  //   forg({+p} ∪ S, G) = forg(S, G ∨ (¬p ∧ G[p\⊤]))
  //   forg({-p} ∪ S, G) = forg(S, G ∨ ( p ∧ G[p\⊥]))
  for (const auto& l : lits) {
    if (lits.count(l.complement())) continue;
    LiteralSet rest = lits;
    rest.erase(l);
    Formula x = Formula::atom(l.atom);
    Formula guard = l.positive ? Formula::negation(x) : x;
    Formula value = l.positive ? Formula::top() : Formula::bottom();
    Formula unfolded = Formula::disj(body, simplify_constants(Formula::conj(guard, substitute(body, l.atom, value))));
    return Formula::forg(Scope::of(rest), unfolded);
  }
  return std::nullopt;
}

struct Pass {
  const EngineConfig& cfg;
  bool changed = false;
  std::size_t rewrites = 0;

  Formula run(const Formula& f) {
    if (f.children().empty()) return f;
    std::vector<Formula> kids;
    kids.reserve(f.children().size());
    for (const auto& c : f.children()) kids.push_back(run(c));
    Formula n = f.with_children(std::move(kids));
    if (!n.same(f)) changed = true;
    Formula folded = fold(n);
    if (!folded.same(n)) {
      changed = true;
      ++rewrites;
      return folded;
    }
    if (n.is(K::Forg)) {
      if (auto r = rewrite_forg(n, cfg)) {
        changed = true;
        ++rewrites;
        return fold(*r);
      }
    } else if (n.is(K::Rename) && n.child().operator_free()) {
      changed = true;
      ++rewrites;
      const auto& pairs = n.pairs();
      return map_atoms(n.child(), [&](const Atom& a) { return rename_atom(a, pairs); });
    }
    return n;
  }
};

}  // namespace

std::optional<Formula> simplify_step(const Formula& f, const EngineConfig& cfg) {
  Pass pass{cfg};
  Formula out = pass.run(f);
  if (!pass.changed) return std::nullopt;
  return out;
}

Formula simplify(const Formula& f, const EngineConfig& cfg) {
  Formula cur = f;
  while (auto next = simplify_step(cur, cfg)) cur = *next;
  return cur;
}

namespace {

// Post-order listing (children first, left to right) of nodes with their
// preorder index, i.e. leftmost-innermost first.
void post_order(const Formula& f, std::size_t& counter, std::vector<std::pair<std::size_t, Formula>>& out) {
  const std::size_t mine = counter++;
  for (const auto& c : f.children()) post_order(c, counter, out);
  out.emplace_back(mine, f);
}

Formula replace_at(const Formula& f, std::size_t target, std::size_t& counter, const Formula& replacement) {
  const std::size_t mine = counter++;
  if (mine == target) {
    counter += f.size() - 1;
    return replacement;
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) {
    if (counter > target) {
      counter += c.size();
      kids.push_back(c);
    } else {
      kids.push_back(replace_at(c, target, counter, replacement));
    }
  }
  return f.with_children(std::move(kids));
}

Formula replace_at(const Formula& f, std::size_t target, const Formula& replacement) {
  std::size_t counter = 0;
  return replace_at(f, target, counter, replacement);
}

bool covers_all_atoms(const LiteralSet& lits, const Formula& body) {
  for (const auto& a : plain_atoms(body))
    if (!lits.count(pos(a)) || !lits.count(neg(a))) return false;
  return true;
}

struct PortfolioChoice {
  Subtask::Kind kind = Subtask::Kind::None;
  Atom atom;
};

PortfolioChoice choose_method(const Formula& node, const EngineConfig& cfg) {
  const LiteralSet lits = scope_literals(node.scope());
  std::vector<Atom> candidates;
  for (const auto& a : plain_atoms(node.child()))
    if (lits.count(pos(a)) && lits.count(neg(a))) candidates.push_back(a);
  if (candidates.empty()) return {};
  if (auto cnf = try_to_cnf(node.child(), cfg.dp_max_clauses)) {
    std::map<Atom, std::pair<std::size_t, std::size_t>> occ;
    for (const auto& cl : cnf->clauses)
      for (const auto& l : cl) (l.positive ? occ[l.atom].first : occ[l.atom].second)++;
    std::optional<Atom> best;
    long best_score = std::numeric_limits<long>::max();
    for (const auto& a : candidates) {
      auto [p, n] = occ[a];
      if (p * n > p + n + cfg.dp_slack) continue;
      long score = static_cast<long>(p * n) - static_cast<long>(p + n);
      if (score < best_score) {
        best_score = score;
        best = a;
      }
    }
    if (best) return {Subtask::Kind::Dp, *best};
  }
  // Shannon expansion on the atom with the fewest occurrences.
  std::map<Atom, std::size_t> count;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.is(K::Atom)) ++count[f.atom()];
    for (const auto& c : f.children()) walk(c);
  };
  walk(node.child());
  Atom best = candidates.front();
  for (const auto& a : candidates)
    if (count[a] < count[best]) best = a;
  return {Subtask::Kind::Shannon, best};
}

}  // namespace

Subtask schedule_subtask(const Formula& current, const EngineConfig& cfg) {
  std::vector<std::pair<std::size_t, Formula>> nodes;
  std::size_t counter = 0;
  post_order(current, counter, nodes);

  for (const auto& [idx, n] : nodes)
    if (n.is(K::Forg) && n.child().operator_free() && covers_all_atoms(scope_literals(n.scope()), n.child()))
      return Subtask{Subtask::Kind::Sat, idx, n, {}};

  for (const auto& [idx, n] : nodes)
    if (n.is(K::Forg) && !n.child().operator_free() && is_closed(n))
      return Subtask{Subtask::Kind::Qbf, idx, n, {}};

  for (const auto& [idx, n] : nodes)
    if (n.is(K::Forg) && n.child().operator_free()) {
      auto choice = choose_method(n, cfg);
      if (choice.kind != Subtask::Kind::None) return Subtask{choice.kind, idx, n, choice.atom};
    }
  return {};
}

namespace {

class Engine {
 public:
  Engine(const EngineConfig& cfg, AtomSet sig, EngineStats& stats) : cfg_(cfg), sig_(std::move(sig)), stats_(stats) {}

  Formula primitives(const Formula& f) {
    switch (f.kind()) {
      case K::Forg:
        return Formula::forg(Scope::of(ground_scope(f.scope(), sig_)), primitives(f.child()));
      case K::Proj: {
        LiteralSet rest = all_literals(sig_);
        for (const auto& l : ground_scope(f.scope(), sig_)) rest.erase(l);
        return Formula::forg(Scope::of(rest), primitives(f.child()));
      }
      case K::Circ: {
        Formula arg = primitives(f.child());
        if (!arg.operator_free()) arg = run(arg);
        return build_circ_reduction(Scope::of(ground_scope(f.scope(), sig_)), arg, sig_);
      }
      case K::Rename:
        return Formula::rename(f.pairs(), primitives(f.child()));
      case K::MacroCall:
      case K::ForAll:
      case K::Exists:
      case K::Param:
        throw PreconditionError("rewrite_to_primitives: macros and quantifiers must be expanded first");
      default: {
        if (f.children().empty()) return f;
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(primitives(c));
        return f.with_children(std::move(kids));
      }
    }
  }

  Formula run(Formula f) {
    for (;;) {
      f = simplify_all(f);
      if (f.operator_free()) return f;
      if (++stats_.steps > cfg_.step_limit)
        throw LimitError("elimination step limit of " + std::to_string(cfg_.step_limit) + " exceeded");
      Subtask t = schedule_subtask(f, cfg_);
      if (t.kind == Subtask::Kind::None) throw Error("elimination made no progress");
      f = replace_at(f, t.node, solve(t));
    }
  }

 private:
  void trace(const std::string& line) const {
    if (cfg_.trace) *cfg_.trace << "[elim] " << line << "\n";
  }

  void note_fallback(const std::string& diagnostic) {
    if (diagnostic.empty()) return;
    ++stats_.solver_fallbacks;
    trace(diagnostic);
    stats_.diagnostics.push_back(diagnostic);
  }

  Formula simplify_all(Formula f) {
    for (;;) {
      Pass pass{cfg_};
      for (;;) {
        pass.changed = false;
        Formula next = pass.run(f);
        if (!pass.changed) break;
        f = next;
      }
      stats_.rewrites += pass.rewrites;
      if (!cfg_.shannon_guard) return f;
      auto g = guarded_shannon(f);
      if (!g) return f;
      f = *g;
    }
  }

  // Tries Shannon expansion on forgotten atoms of innermost Forg nodes and
  // commits the first one whose simplified result is not larger.
  std::optional<Formula> guarded_shannon(const Formula& f) {
    std::vector<std::pair<std::size_t, Formula>> nodes;
    std::size_t counter = 0;
    post_order(f, counter, nodes);
    for (const auto& [idx, n] : nodes) {
      if (!n.is(K::Forg) || !n.child().operator_free()) continue;
      const LiteralSet lits = scope_literals(n.scope());
      for (const auto& a : plain_atoms(n.child())) {
        if (!lits.count(pos(a)) || !lits.count(neg(a))) continue;
        Formula candidate = simplify(Formula::forg(n.scope(), shannon_step(n.child(), a)), cfg_);
        if (candidate.size() <= n.size()) {
          ++stats_.shannon_commits;
          trace("shannon guard: expand " + a.name() + " (size " + std::to_string(n.size()) + " -> " +
                std::to_string(candidate.size()) + ")");
          return replace_at(f, idx, candidate);
        }
      }
    }
    return std::nullopt;
  }

  Formula solve(const Subtask& t) {
    const Formula& node = t.target;
    switch (t.kind) {
      case Subtask::Kind::Sat: {
        ++stats_.sat_calls;
        std::string diag;
        bool sat = solve_with(cfg_.solvers, clausify_equisat(node.child()), &diag);
        note_fallback(diag);
        trace(std::string("sat subtask: ") + (sat ? "satisfiable" : "unsatisfiable"));
        return Formula::constant(sat);
      }
      case Subtask::Kind::Qbf: {
        ++stats_.qbf_calls;
        std::string diag;
        bool value = decide_closed_with(cfg_.solvers, node, &diag);
        note_fallback(diag);
        trace(std::string("qbf subtask: ") + (value ? "true" : "false"));
        return Formula::constant(value);
      }
      case Subtask::Kind::Dp: {
        ++stats_.dp_choices;
        LiteralSet rest = scope_literals(node.scope());
        rest.erase(pos(t.atom));
        rest.erase(neg(t.atom));
        ClauseSet cnf = to_cnf(node.child());
        ClauseSet res = dp_forget_atom(cnf, t.atom);
        trace("portfolio: resolution on " + t.atom.name() + " (" + std::to_string(cnf.size()) + " -> " +
              std::to_string(res.size()) + " clauses)");
        return Formula::forg(Scope::of(rest), cnf_formula(res));
      }
      case Subtask::Kind::Shannon: {
        ++stats_.shannon_choices;
        LiteralSet rest = scope_literals(node.scope());
        rest.erase(pos(t.atom));
        rest.erase(neg(t.atom));
        trace("portfolio: shannon expansion on " + t.atom.name());
        Formula g = node.child();
        Formula expanded = simplify_constants(
            Formula::disj(substitute(g, t.atom, Formula::top()), substitute(g, t.atom, Formula::bottom())));
        return Formula::forg(Scope::of(rest), expanded);
      }
      case Subtask::Kind::None:
        break;
    }
    return node;
  }

  const EngineConfig& cfg_;
  AtomSet sig_;
  EngineStats& stats_;
};

}  // namespace

Formula rewrite_to_primitives(const Formula& f, const AtomSet& sig, const EngineConfig& cfg) {
  EngineStats stats;
  return Engine(cfg, sig, stats).primitives(f);
}

Formula eliminate(const Formula& f, const Program& prog, const EngineConfig& cfg, EngineStats* stats) {
  Formula g = expand_macros(f, prog, cfg.macro_depth);
  g = expand_quantifiers(g, prog.domain);
  EngineStats local;
  EngineStats& s = stats ? *stats : local;
  Engine engine(cfg, atoms_of(g), s);
  return engine.run(engine.primitives(g));
}

}  // namespace elimkit
