#include "elimkit/interpretation.hpp"

#include <algorithm>

#include "elimkit/error.hpp"

namespace elimkit {

Interpretation::Interpretation(const AtomSet& sig)
    : atoms_(sig.begin(), sig.end()), values_(sig.size(), false) {}

Interpretation::Interpretation(const AtomSet& sig, std::uint64_t bits) : Interpretation(sig) {
  for (std::size_t i = 0; i < values_.size() && i < 64; ++i) values_[i] = (bits >> i) & 1U;
}

std::size_t Interpretation::index_of(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || !(*it == a)) return atoms_.size();
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::optional<bool> Interpretation::lookup(const Atom& a) const {
  auto i = index_of(a);
  if (i == atoms_.size()) return std::nullopt;
  return values_[i];
}

bool Interpretation::value(const Atom& a) const {
  auto v = lookup(a);
  if (!v) throw PreconditionError("atom '" + a.name() + "' is outside the interpretation's signature");
  return *v;
}

void Interpretation::set(const Atom& a, bool v) {
  auto i = index_of(a);
  if (i == atoms_.size())
    throw PreconditionError("atom '" + a.name() + "' is outside the interpretation's signature");
  values_[i] = v;
}

Interpretation Interpretation::with(const Atom& a, bool v) const {
  Interpretation out = *this;
  out.set(a, v);
  return out;
}

LiteralSet Interpretation::literals() const {
  LiteralSet out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) out.insert(Literal{atoms_[i], values_[i]});
  return out;
}

}  // namespace elimkit
