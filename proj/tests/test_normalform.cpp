#include <doctest.h>

#include "elimkit/error.hpp"
#include "elimkit/macros.hpp"
#include "elimkit/normalform.hpp"
#include "elimkit/parser.hpp"
#include "support.hpp"

using namespace elimkit;

namespace {

Formula F(const std::string& text) { return parse_formula(text, builtin_program()); }

ClauseSet clauses(std::initializer_list<std::initializer_list<const char*>> cs) {
  ClauseSet out;
  for (const auto& c : cs) {
    std::vector<Literal> lits;
    for (const char* l : c) {
      std::string s(l);
      lits.push_back(s[0] == '~' ? neg(Atom(s.substr(1))) : pos(Atom(s)));
    }
    out.clauses.insert(make_clause(std::move(lits)));
  }
  return out;
}

}  // namespace

TEST_CASE("cnf") {
  CHECK(to_cnf(F("shoes ; (~rained , ~sprinkler_on)")) == clauses({{"shoes", "~rained"}, {"shoes", "~sprinkler_on"}}));
  CHECK(to_cnf(Formula::top()).empty());
  CHECK(to_cnf(F("p <-> q")) == clauses({{"~p", "q"}, {"p", "~q"}}));
  CHECK(to_cnf(Formula::bottom()).has_empty_clause());
  CHECK_THROWS_AS(to_cnf(F("forg([p], p)")), PreconditionError);
}

TEST_CASE("dnf") {
  CHECK(to_dnf(F("rained ; sprinkler_on")) == clauses({{"rained"}, {"sprinkler_on"}}));
  CHECK(to_dnf(Formula::bottom()).empty());
  CHECK(to_dnf(F("(p ; q), ~p")) == clauses({{"~p", "q"}}));
}

TEST_CASE("clause set simplification") {
  CHECK(simplify_clauses(clauses({{"p", "~p"}, {"q"}})) == clauses({{"q"}}));
  CHECK(simplify_clauses(clauses({{"p"}, {"p", "q"}})) == clauses({{"p"}}));
  CHECK(simplify_clauses(clauses({{"p"}, {"p", "q"}}), ClauseMode::Dnf) == clauses({{"p"}}));
}

TEST_CASE("full dnf") {
  AtomSet p{Atom("p")};
  CHECK(full_dnf(Formula::top(), p) == clauses({{"p"}, {"~p"}}));
  AtomSet pr{Atom("p"), Atom("r")};
  ClauseSet d = full_dnf(F("p <- r"), pr);
  CHECK(d.size() == 3);
  for (const auto& c : d.clauses) CHECK(c.size() == 2);
  AtomSet big;
  for (int i = 0; i < 21; ++i) big.insert(Atom("x", 0, {Term::constant(std::to_string(i))}));
  CHECK_THROWS_AS(full_dnf(Formula::top(), big), BoundError);
}

TEST_CASE("clause bound gives up") {
  std::vector<Formula> parts;
  for (int i = 0; i < 12; ++i) {
    parts.push_back(Formula::conj(F("a" + std::string(1, char('a' + i))), F("b" + std::string(1, char('a' + i)))));
  }
  CHECK_FALSE(try_to_cnf(Formula::disj(parts), 100).has_value());
  CHECK(try_to_cnf(F("p, q"), 100).has_value());
}

TEST_CASE("property: normal forms are equivalent to their input") {
  testkit::Rng rng(41);
  auto atoms = testkit::letters(8);
  for (int i = 0; i < 300; ++i) {
    Formula f = testkit::random_plain(rng, atoms, 4);
    REQUIRE(testkit::NaiveSemantics::same(cnf_formula(to_cnf(f)), f));
    REQUIRE(testkit::NaiveSemantics::same(dnf_formula(to_dnf(f)), f));
  }
}

TEST_CASE("property: simplification is idempotent and meaning-preserving") {
  testkit::Rng rng(42);
  auto atoms = testkit::letters(6);
  for (int i = 0; i < 500; ++i) {
    ClauseSet c = testkit::random_clauses(rng, atoms, 10, 4);
    for (ClauseMode mode : {ClauseMode::Cnf, ClauseMode::Dnf}) {
      ClauseSet s = simplify_clauses(c, mode);
      REQUIRE(simplify_clauses(s, mode) == s);
      for (const auto& cl : s.clauses) REQUIRE_FALSE(is_tautology(cl));
      auto as_formula = [&](const ClauseSet& x) { return mode == ClauseMode::Cnf ? cnf_formula(x) : dnf_formula(x); };
      REQUIRE(testkit::NaiveSemantics::same(as_formula(s), as_formula(c)));
    }
  }
}

TEST_CASE("property: full dnf counts models") {
  testkit::Rng rng(43);
  auto atoms = testkit::letters(6);
  AtomSet sig(atoms.begin(), atoms.end());
  testkit::NaiveSemantics naive(atoms);
  for (int i = 0; i < 200; ++i) {
    Formula f = testkit::random_plain(rng, atoms, 4);
    auto m = naive.models(f);
    REQUIRE(full_dnf(f, sig).size() == static_cast<std::size_t>(std::count(m.begin(), m.end(), 1)));
  }
}
