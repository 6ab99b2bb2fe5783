#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace elimkit {

/// Argument term of a compound atom. Variables only exist between parsing
/// and quantifier expansion; atoms handed to the semantic layer are ground.
struct Term {
  std::string name;
  std::vector<Term> args;
  bool variable = false;

  static Term constant(std::string name) { return Term{std::move(name), {}, false}; }
  static Term var(std::string name) { return Term{std::move(name), {}, true}; }

  bool ground() const;
  std::string str() const;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A propositional atom `base^group(args)`. The printed form appends the
/// group number to the base when it is nonzero, so bases never end in a
/// digit and the print name identifies the atom uniquely.
class Atom {
 public:
  Atom() = default;
  explicit Atom(std::string base, std::uint32_t group = 0, std::vector<Term> args = {});

  /// Splits a printed functor such as `abnormal1` into base and group.
  static Atom from_functor(std::string_view functor, std::vector<Term> args = {});

  const std::string& base() const { return base_; }
  std::uint32_t group() const { return group_; }
  const std::vector<Term>& args() const { return args_; }
  const std::string& name() const { return name_; }

  bool ground() const;
  Atom with_group(std::uint32_t group) const { return Atom(base_, group, args_); }
  Atom with_args(std::vector<Term> args) const { return Atom(base_, group_, std::move(args)); }

  friend bool operator==(const Atom& a, const Atom& b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string base_;
  std::uint32_t group_ = 0;
  std::vector<Term> args_;
  std::string name_;
};

struct Literal {
  Atom atom;
  bool positive = true;

  Literal complement() const { return Literal{atom, !positive}; }
  std::string str() const { return positive ? atom.name() : "~" + atom.name(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  /// Ordered by atom print name, positive before negative.
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    return b.positive <=> a.positive;
  }
};

inline Literal pos(Atom a) { return Literal{std::move(a), true}; }
inline Literal neg(Atom a) { return Literal{std::move(a), false}; }

}  // namespace elimkit
