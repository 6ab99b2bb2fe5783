#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "elimkit/atom.hpp"
#include "elimkit/scope.hpp"

namespace elimkit {

class Formula;
class Interpretation;

/// `from-to` pair of a rename operator: atoms of group `from` are replaced
/// by their group-`to` correspondents.
struct RenamePair {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  friend bool operator==(const RenamePair&, const RenamePair&) = default;
};

/// Actual argument of a macro call: a scope or a formula.
using MacroArg = std::variant<Scope, Formula>;

/// Immutable formula tree. Nodes are shared; copying a Formula is cheap.
class Formula {
 public:
  enum class Kind {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,    // lhs -> rhs
    ImpliedBy,  // lhs <- rhs
    Equiv,
    Forg,
    Proj,
    Circ,
    Rename,
    MacroCall,
    ForAll,
    Exists,
    Param,  // formula parameter inside a macro body
  };

  /// Defaults to `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula constant(bool value) { return value ? top() : bottom(); }
  static Formula atom(Atom a);
  static Formula literal(const Literal& l);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula implied_by(Formula a, Formula b);
  static Formula equiv(Formula a, Formula b);
  /// Left-nested conjunction/disjunction; empty lists give true/false.
  static Formula conj(const std::vector<Formula>& parts);
  static Formula disj(const std::vector<Formula>& parts);
  static Formula forg(Scope s, Formula f);
  static Formula proj(Scope s, Formula f);
  static Formula circ(Scope s, Formula f);
  static Formula rename(std::vector<RenamePair> pairs, Formula f);
  static Formula macro_call(std::string name, std::vector<MacroArg> args);
  static Formula forall(std::string var, Formula f);
  static Formula exists(std::string var, Formula f);
  static Formula param(std::string name);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_constant() const { return is(Kind::True) || is(Kind::False); }
  bool is_literal() const;

  const Atom& atom() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children[i]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const Scope& scope() const { return node_->scope; }
  const std::vector<RenamePair>& pairs() const { return node_->pairs; }
  /// Macro name, quantified variable or parameter name.
  const std::string& name() const { return node_->name; }
  const std::vector<MacroArg>& args() const { return node_->args; }

  /// Rebuilds this node with new children (and the same payload).
  Formula with_children(std::vector<Formula> kids) const;
  Formula with_scope(Scope s) const;

  /// True iff no Forg/Proj/Circ/Rename/MacroCall/ForAll/Exists/Param node occurs.
  bool operator_free() const;
  /// AST node count.
  std::size_t size() const;
  /// Node identity (same shared node).
  bool same(const Formula& o) const { return node_ == o.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::True;
    Atom atom;
    std::vector<Formula> children;
    Scope scope;
    std::vector<RenamePair> pairs;
    std::string name;
    std::vector<MacroArg> args;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

  std::shared_ptr<const Node> node_;
};

bool is_second_order(Formula::Kind k);

/// Atoms occurring in `f`, including atoms named in scopes. Rename nodes
/// add the target-group correspondent of every source-group atom of their
/// argument.
AtomSet atoms_of(const Formula& f);

/// Atoms of an operator-free formula only (no rename correspondents).
AtomSet plain_atoms(const Formula& f);

/// Maps `a` to its correspondent under simultaneous group renaming.
Atom rename_atom(const Atom& a, const std::vector<RenamePair>& pairs);

/// Replaces every occurrence of `a` by `replacement`. Both formulas must be
/// operator-free.
Formula substitute(const Formula& f, const Atom& a, const Formula& replacement);

/// Simultaneous atom-to-formula substitution over an operator-free formula.
Formula substitute(const Formula& f, const std::map<Atom, Formula>& subst);

/// Renames atoms everywhere, including explicit scope items of second-order
/// nodes. `f` must map distinct atoms to distinct atoms.
template <class Fn>
Formula map_atoms(const Formula& f, const Fn& fn);

/// Negation normal form over And/Or/True/False/literals.
Formula to_nnf(const Formula& f);

/// Propagates truth constants and removes double negation, bottom-up.
Formula simplify_constants(const Formula& f);

bool evaluate(const Formula& f, const Interpretation& interp);

enum class Polarity { None, Pos, Neg, Both };

Polarity polarity_of_atom(const Formula& f, const Atom& a);
/// Polarity of every atom of an operator-free formula in one pass.
std::map<Atom, Polarity> polarities(const Formula& f);

/// Throws PreconditionError if `f` is not operator-free.
void require_operator_free(const Formula& f, const char* where);

template <class Fn>
Formula map_atoms(const Formula& f, const Fn& fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return Formula::atom(fn(f.atom()));
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Param:
      return f;
    case Formula::Kind::MacroCall: {
      std::vector<MacroArg> args;
      for (const auto& a : f.args()) {
        if (const auto* s = std::get_if<Scope>(&a))
          args.emplace_back(s->map_atoms(fn));
        else
          args.emplace_back(map_atoms(std::get<Formula>(a), fn));
      }
      return Formula::macro_call(f.name(), std::move(args));
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(map_atoms(c, fn));
      Formula out = f.with_children(std::move(kids));
      if (is_second_order(f.kind()) && f.kind() != Formula::Kind::Rename)
        out = out.with_scope(f.scope().map_atoms(fn));
      return out;
    }
  }
}

}  // namespace elimkit
