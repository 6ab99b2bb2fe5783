#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "elimkit/atom.hpp"

namespace elimkit {

using LiteralSet = std::set<Literal>;
using AtomSet = std::set<Atom>;

/// Which literals of an atom (or of a group) a scope item denotes.
enum class Sign { Both, Pos, Neg };

/// Symbolic literal-set expression. Kept unevaluated until an elimination
/// problem fixes the signature; see ground_scope().
class Scope {
 public:
  enum class Kind {
    Item,         // literal(s) of one explicit atom
    Group,        // all (signed) literals of a predicate group
    All,          // every literal of the signature
    Complements,  // literal complements of the child
    Union,        // union of children; an empty union is []
    Difference,   // first child minus second child
    Param,        // macro parameter placeholder
  };

  /// The empty scope `[]`.
  Scope();

  static Scope item(Atom atom, Sign sign = Sign::Both);
  static Scope literal(const Literal& lit);
  static Scope group(std::uint32_t group, Sign sign = Sign::Both);
  static Scope all();
  static Scope complements(Scope s);
  static Scope set_union(std::vector<Scope> parts);
  static Scope difference(Scope a, Scope b);
  static Scope param(std::string name);
  /// Explicit list of literals, one signed item per literal (both signs of
  /// an atom collapse into an unsigned item).
  static Scope of(const LiteralSet& lits);

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  Sign sign() const { return node_->sign; }
  std::uint32_t group_number() const { return node_->group; }
  const std::vector<Scope>& children() const { return node_->children; }
  const std::string& param_name() const { return node_->name; }

  bool has_params() const;
  /// Atoms named by explicit items.
  void collect_atoms(AtomSet& out) const;
  /// Replaces Param nodes by the bound scope; unbound params are kept.
  template <class Lookup>
  Scope substitute_params(const Lookup& lookup) const;
  /// Applies `f` to every explicit item atom.
  template <class Fn>
  Scope map_atoms(const Fn& f) const;

  std::string str() const;

  friend bool operator==(const Scope& a, const Scope& b);

 private:
  struct Node {
    Kind kind = Kind::Union;
    Atom atom;
    Sign sign = Sign::Both;
    std::uint32_t group = 0;
    std::vector<Scope> children;
    std::string name;
  };
  explicit Scope(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Scope make(Node n) { return Scope(std::make_shared<const Node>(std::move(n))); }

  std::shared_ptr<const Node> node_;
};

/// Grounds a scope against a finite signature. Explicit atom items are
/// kept even when their atom is not in `sig`.
LiteralSet ground_scope(const Scope& s, const AtomSet& sig);

/// Every literal over `sig`.
LiteralSet all_literals(const AtomSet& sig);

template <class Lookup>
Scope Scope::substitute_params(const Lookup& lookup) const {
  switch (kind()) {
    case Kind::Param:
      if (auto bound = lookup(param_name())) return *bound;
      return *this;
    case Kind::Complements:
    case Kind::Union:
    case Kind::Difference: {
      std::vector<Scope> kids;
      for (const auto& c : children()) kids.push_back(c.substitute_params(lookup));
      Node n = *node_;
      n.children = std::move(kids);
      return make(std::move(n));
    }
    default:
      return *this;
  }
}

template <class Fn>
Scope Scope::map_atoms(const Fn& f) const {
  switch (kind()) {
    case Kind::Item:
      return item(f(atom()), sign());
    case Kind::Complements:
    case Kind::Union:
    case Kind::Difference: {
      std::vector<Scope> kids;
      for (const auto& c : children()) kids.push_back(c.map_atoms(f));
      Node n = *node_;
      n.children = std::move(kids);
      return make(std::move(n));
    }
    default:
      return *this;
  }
}

}  // namespace elimkit
