#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elimkit/atom.hpp"
#include "elimkit/scope.hpp"

namespace elimkit {

/// Total truth assignment over an ordered signature.
class Interpretation {
 public:
  Interpretation() = default;
  /// All atoms false.
  explicit Interpretation(const AtomSet& sig);
  /// Atom i (in signature order) is true iff bit i of `bits` is set.
  Interpretation(const AtomSet& sig, std::uint64_t bits);

  const std::vector<Atom>& signature() const { return atoms_; }
  std::optional<bool> lookup(const Atom& a) const;
  /// Throws PreconditionError for atoms outside the signature.
  bool value(const Atom& a) const;
  void set(const Atom& a, bool v);
  Interpretation with(const Atom& a, bool v) const;

  /// The complete, consistent literal set this interpretation denotes.
  LiteralSet literals() const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::size_t index_of(const Atom& a) const;

  std::vector<Atom> atoms_;
  std::vector<bool> values_;
};

}  // namespace elimkit
