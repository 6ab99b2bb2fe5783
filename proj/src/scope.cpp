#include "elimkit/scope.hpp"

#include <map>

namespace elimkit {

Scope::Scope() : node_(std::make_shared<const Node>()) {}

Scope Scope::item(Atom atom, Sign sign) {
  Node n;
  n.kind = Kind::Item;
  n.atom = std::move(atom);
  n.sign = sign;
  return make(std::move(n));
}

Scope Scope::literal(const Literal& lit) { return item(lit.atom, lit.positive ? Sign::Pos : Sign::Neg); }

Scope Scope::group(std::uint32_t group, Sign sign) {
  Node n;
  n.kind = Kind::Group;
  n.group = group;
  n.sign = sign;
  return make(std::move(n));
}

Scope Scope::all() {
  Node n;
  n.kind = Kind::All;
  return make(std::move(n));
}

Scope Scope::complements(Scope s) {
  Node n;
  n.kind = Kind::Complements;
  n.children.push_back(std::move(s));
  return make(std::move(n));
}

Scope Scope::set_union(std::vector<Scope> parts) {
  Node n;
  n.kind = Kind::Union;
  n.children = std::move(parts);
  return make(std::move(n));
}

Scope Scope::difference(Scope a, Scope b) {
  Node n;
  n.kind = Kind::Difference;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Scope Scope::param(std::string name) {
  Node n;
  n.kind = Kind::Param;
  n.name = std::move(name);
  return make(std::move(n));
}

Scope Scope::of(const LiteralSet& lits) {
  std::vector<Scope> items;
  for (auto it = lits.begin(); it != lits.end(); ++it) {
    auto next = std::next(it);
    if (it->positive && next != lits.end() && next->atom == it->atom) {
      items.push_back(item(it->atom, Sign::Both));
      it = next;
    } else {
      items.push_back(literal(*it));
    }
  }
  return set_union(std::move(items));
}

bool Scope::has_params() const {
  if (kind() == Kind::Param) return true;
  for (const auto& c : children())
    if (c.has_params()) return true;
  return false;
}

void Scope::collect_atoms(AtomSet& out) const {
  if (kind() == Kind::Item) out.insert(atom());
  for (const auto& c : children()) c.collect_atoms(out);
}

namespace {

std::string signed_prefix(Sign s) {
  switch (s) {
    case Sign::Pos: return "+";
    case Sign::Neg: return "-";
    default: return "";
  }
}

}  // namespace

std::string Scope::str() const {
  switch (kind()) {
    case Kind::Item:
      return signed_prefix(sign()) + atom().name();
    case Kind::Group:
      if (sign() == Sign::Both) return std::to_string(group_number());
      return signed_prefix(sign()) + "(" + std::to_string(group_number()) + ")";
    case Kind::All:
      return "ALL";
    case Kind::Complements:
      return "complements(" + children()[0].str() + ")";
    case Kind::Difference:
      return "minus(" + children()[0].str() + ", " + children()[1].str() + ")";
    case Kind::Param:
      return param_name();
    case Kind::Union: {
      bool flat = true;
      for (const auto& c : children())
        if (c.kind() != Kind::Item && c.kind() != Kind::Group) flat = false;
      if (flat) {
        std::string out = "[";
        for (std::size_t i = 0; i < children().size(); ++i) {
          if (i) out += ", ";
          out += children()[i].str();
        }
        return out + "]";
      }
      std::string out = children().empty() ? "[]" : children()[0].str();
      for (std::size_t i = 1; i < children().size(); ++i)
        out = "union(" + out + ", " + children()[i].str() + ")";
      return out;
    }
  }
  return "";
}

bool operator==(const Scope& a, const Scope& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Scope::Kind::Item:
      return a.atom() == b.atom() && a.sign() == b.sign();
    case Scope::Kind::Group:
      return a.group_number() == b.group_number() && a.sign() == b.sign();
    case Scope::Kind::All:
      return true;
    case Scope::Kind::Param:
      return a.param_name() == b.param_name();
    default:
      return a.children() == b.children();
  }
}

namespace {

void add_signed(LiteralSet& out, const Atom& a, Sign s) {
  if (s != Sign::Neg) out.insert(pos(a));
  if (s != Sign::Pos) out.insert(neg(a));
}

}  // namespace

LiteralSet all_literals(const AtomSet& sig) {
  LiteralSet out;
  for (const auto& a : sig) add_signed(out, a, Sign::Both);
  return out;
}

LiteralSet ground_scope(const Scope& s, const AtomSet& sig) {
  LiteralSet out;
  switch (s.kind()) {
    case Scope::Kind::Item:
      add_signed(out, s.atom(), s.sign());
      break;
    case Scope::Kind::Group:
      for (const auto& a : sig)
        if (a.group() == s.group_number()) add_signed(out, a, s.sign());
      break;
    case Scope::Kind::All:
      out = all_literals(sig);
      break;
    case Scope::Kind::Complements:
      for (const auto& l : ground_scope(s.children()[0], sig)) out.insert(l.complement());
      break;
    case Scope::Kind::Union:
      for (const auto& c : s.children()) {
        auto part = ground_scope(c, sig);
        out.insert(part.begin(), part.end());
      }
      break;
    case Scope::Kind::Difference: {
      out = ground_scope(s.children()[0], sig);
      for (const auto& l : ground_scope(s.children()[1], sig)) out.erase(l);
      break;
    }
    case Scope::Kind::Param:
      break;
  }
  return out;
}

}  // namespace elimkit
