#include "elimkit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "elimkit/error.hpp"

namespace elimkit {

ModelSet::ModelSet(const AtomSet& sig) : atoms_(sig.begin(), sig.end()) {
  bits_.assign(std::max<std::uint64_t>(1, universe() >> 6), 0);
}

std::size_t ModelSet::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Interpretation> ModelSet::interpretations() const {
  AtomSet sig(atoms_.begin(), atoms_.end());
  std::vector<Interpretation> out;
  for (std::uint64_t m = 0; m < universe(); ++m)
    if (contains(m)) out.emplace_back(sig, m);
  return out;
}

class Oracle {
 public:
  explicit Oracle(const AtomSet& sig) : sig_(sig), atoms_(sig.begin(), sig.end()) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
    universe_ = std::uint64_t{1} << atoms_.size();
  }

  ModelSet eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        return full();
      case K::False:
        return ModelSet(sig_);
      case K::Atom: {
        ModelSet out(sig_);
        const std::size_t i = index(f.atom());
        for (std::uint64_t m = 0; m < universe_; ++m)
          if ((m >> i) & 1U) out.insert(m);
        return out;
      }
      case K::Not:
        return complement(eval(f.child()));
      case K::And:
        return combine(eval(f.lhs()), eval(f.rhs()), [](auto a, auto b) { return a & b; });
      case K::Or:
        return combine(eval(f.lhs()), eval(f.rhs()), [](auto a, auto b) { return a | b; });
      case K::Implies:
        return combine(eval(f.lhs()), eval(f.rhs()), [](auto a, auto b) { return ~a | b; });
      case K::ImpliedBy:
        return combine(eval(f.lhs()), eval(f.rhs()), [](auto a, auto b) { return a | ~b; });
      case K::Equiv:
        return combine(eval(f.lhs()), eval(f.rhs()), [](auto a, auto b) { return ~(a ^ b); });
      case K::Forg:
        return forget(eval(f.child()), ground_scope(f.scope(), sig_));
      case K::Proj: {
        LiteralSet rest = all_literals(sig_);
        for (const auto& l : ground_scope(f.scope(), sig_)) rest.erase(l);
        return forget(eval(f.child()), rest);
      }
      case K::Circ:
        return circumscribe(eval(f.child()), ground_scope(f.scope(), sig_));
      case K::Rename:
        return rename(eval(f.child()), f.pairs());
      default:
        throw PreconditionError("model_set: macro calls and quantifiers must be expanded first");
    }
  }

 private:
  std::size_t index(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end())
      throw PreconditionError("model_set: atom '" + a.name() + "' is outside the signature");
    return it->second;
  }

  ModelSet full() const {
    ModelSet out(sig_);
    for (auto& w : out.bits_) w = ~std::uint64_t{0};
    trim(out);
    return out;
  }

  void trim(ModelSet& s) const {
    if (universe_ < 64) s.bits_[0] &= (std::uint64_t{1} << universe_) - 1;
  }

  ModelSet complement(ModelSet s) const {
    for (auto& w : s.bits_) w = ~w;
    trim(s);
    return s;
  }

  template <class Op>
  ModelSet combine(ModelSet a, const ModelSet& b, Op op) const {
    for (std::size_t i = 0; i < a.bits_.size(); ++i) a.bits_[i] = op(a.bits_[i], b.bits_[i]);
    trim(a);
    return a;
  }

  // I |= forg(S, F) iff some model J of F agrees with I on every literal of
  // J outside S. The relation factors per atom, so atoms are processed one
  // at a time: I gains membership from its flip at atom i when J's literal
  // on atom i is in S.
  ModelSet forget(ModelSet m, const LiteralSet& s) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const bool pos_in = s.count(pos(atoms_[i])) > 0;
      const bool neg_in = s.count(neg(atoms_[i])) > 0;
      if (!pos_in && !neg_in) continue;
      ModelSet next = m;
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t I = 0; I < universe_; ++I) {
        if (next.contains(I)) continue;
        const std::uint64_t J = I ^ bit;
        const bool j_true = (J & bit) != 0;
        if (m.contains(J) && (j_true ? pos_in : neg_in)) next.insert(I);
      }
      m = std::move(next);
    }
    return m;
  }

  // I |= circ(S, F) iff I |= F and no model J of F has (J∩S) ⊊ (I∩S).
  // Fixed atoms (both literals in S) must agree; minimized/maximized atoms
  // give a subset order on a bit vector, checked by a subset-sum sweep per
  // class of fixed values.
  ModelSet circumscribe(const ModelSet& m, const LiteralSet& s) const {
    std::vector<std::size_t> fixed, ordered;
    std::vector<bool> maximize;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const bool p = s.count(pos(atoms_[i])) > 0;
      const bool n = s.count(neg(atoms_[i])) > 0;
      if (p && n) {
        fixed.push_back(i);
      } else if (p || n) {
        ordered.push_back(i);
        maximize.push_back(n);
      }
    }
    auto fixed_key = [&](std::uint64_t I) {
      std::uint64_t k = 0;
      for (std::size_t j = 0; j < fixed.size(); ++j) k |= ((I >> fixed[j]) & 1U) << j;
      return k;
    };
    // Bit j of the order key is set iff the scope literal of ordered[j] is
    // true in I.
    auto order_key = [&](std::uint64_t I) {
      std::uint64_t k = 0;
      for (std::size_t j = 0; j < ordered.size(); ++j) {
        bool v = (I >> ordered[j]) & 1U;
        if (maximize[j]) v = !v;
        k |= std::uint64_t{v} << j;
      }
      return k;
    };
    const std::uint64_t width = std::uint64_t{1} << ordered.size();
    std::map<std::uint64_t, std::vector<char>> present;
    for (std::uint64_t I = 0; I < universe_; ++I) {
      if (!m.contains(I)) continue;
      auto& v = present[fixed_key(I)];
      if (v.empty()) v.assign(width, 0);
      v[order_key(I)] = 1;
    }
    // below[k]: some present key is a subset of k (k included).
    std::map<std::uint64_t, std::vector<char>> strictly_below;
    for (auto& [fk, v] : present) {
      std::vector<char> below = v;
      for (std::size_t j = 0; j < ordered.size(); ++j)
        for (std::uint64_t k = 0; k < width; ++k)
          if ((k >> j) & 1U) below[k] = below[k] || below[k ^ (std::uint64_t{1} << j)];
      std::vector<char> strict(width, 0);
      for (std::uint64_t k = 0; k < width; ++k)
        for (std::size_t j = 0; j < ordered.size() && !strict[k]; ++j)
          if ((k >> j) & 1U) strict[k] = below[k ^ (std::uint64_t{1} << j)];
      strictly_below.emplace(fk, std::move(strict));
    }
    ModelSet out(sig_);
    for (std::uint64_t I = 0; I < universe_; ++I) {
      if (!m.contains(I)) continue;
      if (!strictly_below.at(fixed_key(I))[order_key(I)]) out.insert(I);
    }
    return out;
  }

  // Models of the full DNF of F after replacing each source-group atom by
  // its target correspondent.
  ModelSet rename(const ModelSet& m, const std::vector<RenamePair>& pairs) const {
    std::vector<std::size_t> image(atoms_.size());
    std::uint64_t target_mask = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      // A source atom whose correspondent lies outside the signature does
      // not occur in the argument; keeping it in place is equivalent.
      auto it = index_.find(rename_atom(atoms_[i], pairs));
      image[i] = it == index_.end() ? i : it->second;
      target_mask |= std::uint64_t{1} << image[i];
    }
    ModelSet partial(sig_);
    for (std::uint64_t J = 0; J < universe_; ++J) {
      if (!m.contains(J)) continue;
      std::uint64_t assigned = 0, value = 0;
      bool consistent = true;
      for (std::size_t i = 0; i < atoms_.size() && consistent; ++i) {
        const std::uint64_t t = std::uint64_t{1} << image[i];
        const std::uint64_t v = ((J >> i) & 1U) ? t : 0;
        if (assigned & t) {
          consistent = (value & t) == v;
        } else {
          assigned |= t;
          value |= v;
        }
      }
      if (consistent) partial.insert(value);
    }
    ModelSet out(sig_);
    for (std::uint64_t I = 0; I < universe_; ++I)
      if (partial.contains(I & target_mask)) out.insert(I);
    return out;
  }

  AtomSet sig_;
  std::vector<Atom> atoms_;
  std::map<Atom, std::size_t> index_;
  std::uint64_t universe_ = 1;
};

ModelSet model_set(const Formula& f, const AtomSet& sig, std::size_t bound) {
  if (sig.size() > bound || sig.size() > 30)
    throw BoundError("oracle: signature of " + std::to_string(sig.size()) +
                     " atoms exceeds the bound of " + std::to_string(bound));
  return Oracle(sig).eval(f);
}

namespace {

AtomSet joint_signature(const Formula& f, const Formula& g) {
  AtomSet sig = atoms_of(f);
  auto more = atoms_of(g);
  sig.insert(more.begin(), more.end());
  return sig;
}

}  // namespace

bool equivalent(const Formula& f, const Formula& g, std::size_t bound) {
  auto sig = joint_signature(f, g);
  return model_set(f, sig, bound) == model_set(g, sig, bound);
}

bool entails(const Formula& f, const Formula& g, std::size_t bound) {
  auto sig = joint_signature(f, g);
  auto mf = model_set(f, sig, bound);
  auto mg = model_set(g, sig, bound);
  for (std::uint64_t m = 0; m < mf.universe(); ++m)
    if (mf.contains(m) && !mg.contains(m)) return false;
  return true;
}

std::set<AtomSet> answer_sets_reduct(const std::vector<NormalRule>& rules) {
  AtomSet universe;
  for (const auto& r : rules) {
    universe.insert(r.head);
    universe.insert(r.positive.begin(), r.positive.end());
    universe.insert(r.naf.begin(), r.naf.end());
  }
  if (universe.size() > 24) throw BoundError("answer_sets_reduct: too many atoms");
  const std::vector<Atom> atoms(universe.begin(), universe.end());
  std::set<AtomSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    AtomSet x;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((bits >> i) & 1U) x.insert(atoms[i]);
    std::vector<const NormalRule*> reduct;
    for (const auto& r : rules) {
      bool blocked = std::any_of(r.naf.begin(), r.naf.end(), [&](const Atom& a) { return x.count(a) > 0; });
      if (!blocked) reduct.push_back(&r);
    }
    AtomSet least;
    for (bool changed = true; changed;) {
      changed = false;
      for (const NormalRule* r : reduct) {
        if (least.count(r->head)) continue;
        bool fires = std::all_of(r->positive.begin(), r->positive.end(),
                                 [&](const Atom& a) { return least.count(a) > 0; });
        if (fires) {
          least.insert(r->head);
          changed = true;
        }
      }
    }
    if (least == x) out.insert(std::move(x));
  }
  return out;
}

}  // namespace elimkit
