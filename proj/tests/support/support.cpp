#include "support.hpp"

#include "elimkit/parser.hpp"

#include <algorithm>
#include <stdexcept>

namespace testkit {

using K = Formula::Kind;

std::vector<Atom> letters(std::size_t n) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n && i < 8; ++i) out.emplace_back(names[i]);
  return out;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula random_plain(Rng& rng, const std::vector<Atom>& atoms, int depth) {
  if (depth <= 0 || coin(rng, 0.25)) {
    int k = uniform(rng, 0, 19);
    if (k == 0) return Formula::top();
    if (k == 1) return Formula::bottom();
    Formula a = Formula::atom(atoms[uniform(rng, 0, static_cast<int>(atoms.size()) - 1)]);
    return coin(rng, 0.3) ? Formula::negation(a) : a;
  }
  Formula l = random_plain(rng, atoms, depth - 1);
  switch (uniform(rng, 0, 6)) {
    case 0:
      return Formula::negation(l);
    case 1:
    case 2:
      return Formula::conj(l, random_plain(rng, atoms, depth - 1));
    case 3:
    case 4:
      return Formula::disj(l, random_plain(rng, atoms, depth - 1));
    case 5:
      return coin(rng) ? Formula::implies(l, random_plain(rng, atoms, depth - 1))
                       : Formula::implied_by(l, random_plain(rng, atoms, depth - 1));
    default:
      return Formula::equiv(l, random_plain(rng, atoms, depth - 1));
  }
}

namespace {

Scope random_items(Rng& rng, const std::vector<Atom>& atoms) {
  std::vector<Scope> items;
  for (const auto& a : atoms) {
    if (!coin(rng, 0.4)) continue;
    int s = uniform(rng, 0, 2);
    items.push_back(Scope::item(a, s == 0 ? elimkit::Sign::Both : s == 1 ? elimkit::Sign::Pos : elimkit::Sign::Neg));
  }
  return Scope::set_union(std::move(items));
}

}  // namespace

Scope random_scope(Rng& rng, const std::vector<Atom>& atoms) {
  switch (uniform(rng, 0, 9)) {
    case 0:
      return Scope::complements(random_items(rng, atoms));
    case 1:
      return Scope::all();
    case 2:
      return Scope::group(static_cast<std::uint32_t>(uniform(rng, 0, 1)),
                          static_cast<elimkit::Sign>(uniform(rng, 0, 2)));
    case 3:
      return Scope::set_union({random_items(rng, atoms), Scope::group(1)});
    case 4:
      return Scope::difference(Scope::all(), random_items(rng, atoms));
    default:
      return random_items(rng, atoms);
  }
}

Formula random_operator_formula(Rng& rng, const std::vector<Atom>& atoms, int nesting) {
  if (nesting <= 0) return random_plain(rng, atoms, uniform(rng, 1, 3));
  auto inner = [&] { return random_operator_formula(rng, atoms, nesting - 1); };
  switch (uniform(rng, 0, 7)) {
    case 0:
    case 1:
      return Formula::forg(random_scope(rng, atoms), inner());
    case 2:
      return Formula::proj(random_scope(rng, atoms), inner());
    case 3:
      return Formula::circ(random_scope(rng, atoms), inner());
    case 4:
      return Formula::rename({{1, 0}}, inner());
    case 5:
      return Formula::conj(inner(), random_plain(rng, atoms, 2));
    case 6:
      return Formula::disj(inner(), inner());
    default:
      return Formula::negation(inner());
  }
}

ClauseSet random_clauses(Rng& rng, const std::vector<Atom>& atoms, int max_clauses, int max_len) {
  ClauseSet out;
  int n = uniform(rng, 0, max_clauses);
  for (int i = 0; i < n; ++i) {
    std::vector<elimkit::Literal> lits;
    int len = uniform(rng, 0, max_len);
    for (int j = 0; j < len; ++j)
      lits.push_back({atoms[uniform(rng, 0, static_cast<int>(atoms.size()) - 1)], coin(rng)});
    out.clauses.insert(elimkit::make_clause(std::move(lits)));
  }
  return out;
}

NaiveSemantics::NaiveSemantics(std::vector<Atom> sig) : sig_(std::move(sig)) {
  std::sort(sig_.begin(), sig_.end());
  sig_.erase(std::unique(sig_.begin(), sig_.end()), sig_.end());
  if (sig_.size() > 16) throw std::runtime_error("naive semantics: signature too large");
}

bool NaiveSemantics::same(const Formula& f, const Formula& g) {
  auto a = elimkit::atoms_of(f), b = elimkit::atoms_of(g);
  std::vector<Atom> sig(a.begin(), a.end());
  sig.insert(sig.end(), b.begin(), b.end());
  NaiveSemantics n(sig);
  return n.models(f) == n.models(g);
}

std::size_t NaiveSemantics::index(const Atom& a) const {
  auto it = std::lower_bound(sig_.begin(), sig_.end(), a);
  if (it == sig_.end() || !(*it == a)) throw std::runtime_error("naive semantics: atom outside signature: " + a.name());
  return static_cast<std::size_t>(it - sig_.begin());
}

NaiveSemantics::Lits NaiveSemantics::ground(const Scope& s) const {
  const std::uint64_t full = (std::uint64_t{1} << sig_.size()) - 1;
  Lits out;
  switch (s.kind()) {
    case Scope::Kind::Item: {
      std::uint64_t bit = std::uint64_t{1} << index(s.atom());
      if (s.sign() != elimkit::Sign::Neg) out.pos |= bit;
      if (s.sign() != elimkit::Sign::Pos) out.neg |= bit;
      return out;
    }
    case Scope::Kind::Group:
      for (std::size_t i = 0; i < sig_.size(); ++i)
        if (sig_[i].group() == s.group_number()) {
          if (s.sign() != elimkit::Sign::Neg) out.pos |= std::uint64_t{1} << i;
          if (s.sign() != elimkit::Sign::Pos) out.neg |= std::uint64_t{1} << i;
        }
      return out;
    case Scope::Kind::All:
      return {full, full};
    case Scope::Kind::Complements: {
      Lits c = ground(s.children()[0]);
      return {c.neg, c.pos};
    }
    case Scope::Kind::Union:
      for (const auto& c : s.children()) {
        Lits l = ground(c);
        out.pos |= l.pos;
        out.neg |= l.neg;
      }
      return out;
    case Scope::Kind::Difference: {
      Lits a = ground(s.children()[0]), b = ground(s.children()[1]);
      return {a.pos & ~b.pos, a.neg & ~b.neg};
    }
    case Scope::Kind::Param:
      break;
  }
  throw std::runtime_error("naive semantics: unexpected scope");
}

bool NaiveSemantics::holds(const Formula& f, std::uint64_t m) const {
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return (m >> index(f.atom())) & 1U;
    case K::Not:
      return !holds(f.child(), m);
    case K::And:
      return holds(f.lhs(), m) && holds(f.rhs(), m);
    case K::Or:
      return holds(f.lhs(), m) || holds(f.rhs(), m);
    case K::Implies:
      return !holds(f.lhs(), m) || holds(f.rhs(), m);
    case K::ImpliedBy:
      return holds(f.lhs(), m) || !holds(f.rhs(), m);
    case K::Equiv:
      return holds(f.lhs(), m) == holds(f.rhs(), m);
    default:
      return models(f)[m] != 0;
  }
}

std::vector<char> NaiveSemantics::models(const Formula& f) const {
  const std::uint64_t n = std::uint64_t{1} << sig_.size();
  std::vector<char> out(n, 0);
  switch (f.kind()) {
    case K::Forg:
    case K::Proj: {
      Lits s = ground(f.scope());
      if (f.is(K::Proj)) {
        // proj(S, F): literals of the witness inside S must hold in I.
        s = Lits{~s.pos & (n - 1), ~s.neg & (n - 1)};
      }
      auto inner = models(f.child());
      for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n && !out[i]; ++j) {
          if (!inner[j]) continue;
          // Literals of J outside S must also be literals of I.
          std::uint64_t kept = (j & ~s.pos) | (~j & ~s.neg);
          if (((i ^ j) & kept & (n - 1)) == 0) out[i] = 1;
        }
      }
      return out;
    }
    case K::Circ: {
      Lits s = ground(f.scope());
      auto inner = models(f.child());
      auto lits = [&](std::uint64_t x) { return std::pair{x & s.pos, ~x & s.neg & (n - 1)}; };
      for (std::uint64_t i = 0; i < n; ++i) {
        if (!inner[i]) continue;
        auto [ip, in] = lits(i);
        bool minimal = true;
        for (std::uint64_t j = 0; j < n && minimal; ++j) {
          if (!inner[j]) continue;
          auto [jp, jn] = lits(j);
          bool below = (jp & ~ip) == 0 && (jn & ~in) == 0;
          bool equal = jp == ip && jn == in;
          if (below && !equal) minimal = false;
        }
        out[i] = minimal;
      }
      return out;
    }
    case K::Rename: {
      auto inner = models(f.child());
      std::vector<std::size_t> target(sig_.size());
      for (std::size_t a = 0; a < sig_.size(); ++a) {
        Atom t = elimkit::rename_atom(sig_[a], f.pairs());
        target[a] = std::binary_search(sig_.begin(), sig_.end(), t) ? index(t) : a;
      }
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n && !out[i]; ++j) {
          if (!inner[j]) continue;
          bool ok = true;
          for (std::size_t a = 0; a < sig_.size() && ok; ++a) ok = ((j >> a) & 1U) == ((i >> target[a]) & 1U);
          if (ok) out[i] = 1;
        }
      return out;
    }
    case K::MacroCall:
    case K::ForAll:
    case K::Exists:
    case K::Param:
      throw std::runtime_error("naive semantics: expand macros and quantifiers first");
    case K::Not: {
      auto c = models(f.child());
      for (std::uint64_t i = 0; i < n; ++i) out[i] = !c[i];
      return out;
    }
    case K::And:
    case K::Or:
    case K::Implies:
    case K::ImpliedBy:
    case K::Equiv: {
      auto a = models(f.lhs()), b = models(f.rhs());
      for (std::uint64_t i = 0; i < n; ++i) {
        bool x = a[i], y = b[i];
        switch (f.kind()) {
          case K::And: out[i] = x && y; break;
          case K::Or: out[i] = x || y; break;
          case K::Implies: out[i] = !x || y; break;
          case K::ImpliedBy: out[i] = x || !y; break;
          default: out[i] = x == y; break;
        }
      }
      return out;
    }
    default:
      for (std::uint64_t i = 0; i < n; ++i) out[i] = holds(f, i);
      return out;
  }
}

bool truth_table_sat(const Formula& f) {
  auto a = elimkit::atoms_of(f);
  NaiveSemantics n(std::vector<Atom>(a.begin(), a.end()));
  auto m = n.models(f);
  return std::find(m.begin(), m.end(), 1) != m.end();
}

Formula parse_ppm(const std::string& text) {
  if (text == "[]") return Formula::bottom();
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "[]") == 0) {
      out += "true";
      ++i;
    } else if (text.compare(i, 3, "],[") == 0) {
      out += ") ; (";
      i += 2;
    } else if (text[i] == '[' || text[i] == ']') {
      out += text[i] == '[' ? '(' : ')';
    } else {
      out += text[i];
    }
  }
  return elimkit::parse_formula(out, elimkit::Program{});
}

}  // namespace testkit
