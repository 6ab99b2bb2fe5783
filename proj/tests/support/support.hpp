#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elimkit/formula.hpp"
#include "elimkit/normalform.hpp"
#include "elimkit/oracle.hpp"

namespace testkit {

using elimkit::Atom;
using elimkit::ClauseSet;
using elimkit::Formula;
using elimkit::Scope;

using Rng = std::mt19937_64;

/// p, q, r, s, t, u, v, w (first n).
std::vector<Atom> letters(std::size_t n);

int uniform(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);

/// Random operator-free formula over `atoms` using every connective.
Formula random_plain(Rng& rng, const std::vector<Atom>& atoms, int depth);

/// Random symbolic scope: item lists, signed items, groups, ALL,
/// complements, unions and differences.
Scope random_scope(Rng& rng, const std::vector<Atom>& atoms);

/// Random formula with up to `nesting` levels of forg/proj/circ/rename.
/// `atoms` may contain group-1 atoms whose group-0 correspondents are also
/// in `atoms`.
Formula random_operator_formula(Rng& rng, const std::vector<Atom>& atoms, int nesting);

ClauseSet random_clauses(Rng& rng, const std::vector<Atom>& atoms, int max_clauses, int max_len);

/// Brute-force semantics written directly from the model-theoretic
/// definitions, independent of the library's oracle. Model m assigns atom
/// i of `sig` the value of bit i.
class NaiveSemantics {
 public:
  explicit NaiveSemantics(std::vector<Atom> sig);
  /// Signature is atoms_of(f) ∪ atoms_of(g).
  static bool same(const Formula& f, const Formula& g);

  std::vector<char> models(const Formula& f) const;
  bool holds(const Formula& f, std::uint64_t m) const;
  std::size_t index(const Atom& a) const;
  const std::vector<Atom>& signature() const { return sig_; }

  /// Positive and negative literal masks of a grounded scope.
  struct Lits {
    std::uint64_t pos = 0, neg = 0;
  };
  Lits ground(const Scope& s) const;

 private:
  std::vector<Atom> sig_;
};

/// Truth-table satisfiability of an operator-free formula.
bool truth_table_sat(const Formula& f);

/// Reads ppm output back: models become conjunctions, the list a disjunction.
Formula parse_ppm(const std::string& text);

}  // namespace testkit
