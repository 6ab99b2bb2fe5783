#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "elimkit/formula.hpp"
#include "elimkit/interpretation.hpp"

namespace elimkit {

inline constexpr std::size_t kDefaultOracleBound = 20;

/// Explicit set of total interpretations over an ordered signature. Model
/// `m` assigns atom i (signature order) the value of bit i of m.
class ModelSet {
 public:
  ModelSet() = default;
  explicit ModelSet(const AtomSet& sig);

  const std::vector<Atom>& signature() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::uint64_t universe() const { return std::uint64_t{1} << atoms_.size(); }

  bool contains(std::uint64_t m) const { return (bits_[m >> 6] >> (m & 63)) & 1U; }
  void insert(std::uint64_t m) { bits_[m >> 6] |= std::uint64_t{1} << (m & 63); }
  void erase(std::uint64_t m) { bits_[m >> 6] &= ~(std::uint64_t{1} << (m & 63)); }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<Interpretation> interpretations() const;

  friend bool operator==(const ModelSet&, const ModelSet&) = default;

 private:
  friend class Oracle;
  std::vector<Atom> atoms_;
  std::vector<std::uint64_t> bits_;
};

/// Reference semantics by enumeration of all 2^|sig| interpretations.
/// Formulas must be macro-expanded and quantifier-free; every atom they
/// mention must belong to the signature.
ModelSet model_set(const Formula& f, const AtomSet& sig, std::size_t bound = kDefaultOracleBound);

/// model_set(f) == model_set(g) over atoms_of(f) ∪ atoms_of(g).
bool equivalent(const Formula& f, const Formula& g, std::size_t bound = kDefaultOracleBound);

/// Every model of `f` is a model of `g`, over the joint signature.
bool entails(const Formula& f, const Formula& g, std::size_t bound = kDefaultOracleBound);

/// Normal rule `head <- pos_1, ..., pos_k, not naf_1, ..., not naf_m`.
struct NormalRule {
  Atom head;
  std::vector<Atom> positive;
  std::vector<Atom> naf;
};

/// Stable models by reduct: all X equal to the least model of the reduct of
/// `rules` with respect to X. Candidates range over subsets of the rule
/// atoms.
std::set<AtomSet> answer_sets_reduct(const std::vector<NormalRule>& rules);

}  // namespace elimkit
