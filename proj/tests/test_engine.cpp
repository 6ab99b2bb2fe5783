#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include "elimkit/engine.hpp"
#include "elimkit/error.hpp"
#include "elimkit/macros.hpp"
#include "elimkit/oracle.hpp"
#include "elimkit/parser.hpp"
#include "elimkit/printer.hpp"
#include "elimkit/sat.hpp"
#include "support.hpp"

using namespace elimkit;

namespace {

Program kb_program() {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/kb.tel");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

Formula F(const std::string& text) {
  static const Program prog = kb_program();
  return parse_formula(text, prog);
}

Formula elim(const std::string& text, const EngineConfig& cfg = {}) { return eliminate(F(text), kb_program(), cfg); }

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

std::vector<Atom> soundness_atoms() {
  auto atoms = testkit::letters(5);
  atoms.push_back(Atom("p", 1));
  atoms.push_back(Atom("q", 1));
  return atoms;
}

bool has_reserved_atoms(const Formula& f) {
  for (const auto& a : atoms_of(f))
    if (is_definitional(a) || a.base().find('\'') != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("forgetting grass in the sprinkler knowledge base") {
  Formula r = elim("forg([grass_is_wet], kb1)");
  CHECK(r.operator_free());
  CHECK(equivalent(r, F("(shoes_are_wet <- rained_last_night), (shoes_are_wet <- sprinkler_was_on)")));
  CHECK(print_ppr(r) == "((shoes_are_wet <- rained_last_night), (shoes_are_wet <- sprinkler_was_on))");
}

TEST_CASE("eliminating the middle atom of a chain") {
  Formula r = elim("forg([q], (p <- q), (q <- r))");
  CHECK(equivalent(r, F("p <- r")));
  CHECK(print_ppr(r) == "(p <- r)");
}

TEST_CASE("empty scope is the identity") {
  testkit::Rng rng(61);
  auto atoms = testkit::letters(5);
  for (int i = 0; i < 100; ++i) {
    Formula f = testkit::random_plain(rng, atoms, 4);
    Formula r = eliminate(Formula::forg(Scope(), f), builtin_program());
    REQUIRE(equivalent(r, f));
  }
}

TEST_CASE("reduction to forgetting and renaming") {
  Formula kb1 = F("kb1");
  AtomSet sig = atoms_of(kb1);
  Formula p = rewrite_to_primitives(F("proj([shoes_are_wet, rained_last_night, sprinkler_was_on], kb1)"), sig);
  REQUIRE(p.is(Formula::Kind::Forg));
  CHECK(scope_literals(p.scope()) == LiteralSet{pos(Atom("grass_is_wet")), neg(Atom("grass_is_wet"))});

  Formula all = rewrite_to_primitives(F("proj(ALL, p)"), {Atom("p")});
  REQUIRE(all.is(Formula::Kind::Forg));
  CHECK(scope_literals(all.scope()).empty());
  CHECK(simplify(all) == F("p"));

  CHECK(rewrite_to_primitives(F("circ([], p ; q)"), {Atom("p"), Atom("q")}) == F("p ; q"));

  Formula mixed = rewrite_to_primitives(F("rename([1-0], circ([+p], proj([q], p1 ; q)))"),
                                        atoms_of(F("rename([1-0], circ([+p], proj([q], p1 ; q)))")));
  std::function<bool(const Formula&)> primitive = [&](const Formula& f) {
    if (is_second_order(f.kind()) && !f.is(Formula::Kind::Forg) && !f.is(Formula::Kind::Rename)) return false;
    return std::all_of(f.children().begin(), f.children().end(), primitive);
  };
  CHECK(primitive(mixed));
  CHECK_THROWS_AS(rewrite_to_primitives(F("gwsc([p], q, r)"), {}), PreconditionError);
}

TEST_CASE("circumscription reduction") {
  AtomSet pq{Atom("p"), Atom("q")};
  Formula r = build_circ_reduction(parse_scope("[+p]"), F("p ; q"), pq);
  CHECK(equivalent(r, F("~p, q")));
  CHECK(build_circ_reduction(parse_scope("[p]"), F("p ; q"), {Atom("p")}) == F("p ; q"));

  // abnormal minimized, bird fixed, flies varied.
  Formula birds = F("(flies <- bird, ~abnormal), bird");
  AtomSet sig = atoms_of(birds);
  Formula c = build_circ_reduction(parse_scope("[+abnormal, bird]"), birds, sig);
  CHECK(equivalent(c, Formula::circ(parse_scope("[+abnormal, bird]"), birds)));
  CHECK(equivalent(c, F("bird, flies, ~abnormal")));
  CHECK(reserved_prime_group(atoms_of(F("p3 ; q"))) == 4);
  CHECK_THROWS_AS(build_circ_reduction(Scope(), F("rename([1-0], p1)"), {}), PreconditionError);
}

TEST_CASE("simplification rules") {
  Formula a = rewrite_to_primitives(F("forg([p], q ; (p, r))"), atoms_of(F("q ; p ; r")));
  auto once = simplify_step(a);
  REQUIRE(once);
  CHECK(equivalent(*once, a));
  CHECK(simplify(a) == F("q ; r"));

  Formula b = rewrite_to_primitives(F("forg([+p], p, (p -> q))"), atoms_of(F("p, q")));
  CHECK(equivalent(simplify(b), F("q")));
  CHECK(simplify(b).operator_free());

  CHECK(simplify(rewrite_to_primitives(F("forg([p], p, q)"), atoms_of(F("p, q")))) == F("q"));
  CHECK(simplify(F("forg([z], p)")) == F("p"));
  CHECK(simplify(F("forg([p], forg([q], p ; q))")) == Formula::top());
  CHECK_FALSE(simplify_step(F("p ; q")).has_value());
  CHECK(simplify(F("rename([1-0], p1, q)")) == F("p, q"));
}

TEST_CASE("shannon expansion") {
  Atom p("p"), q("q");
  CHECK(shannon_step(F("p"), p) == F("p"));
  Formula chain = F("(p <- q), (q <- r)");
  Formula s = shannon_step(chain, q);
  CHECK(equivalent(s, chain));
  Formula under = simplify(Formula::forg(parse_scope("[q]"), s));
  CHECK(under.operator_free());
  CHECK(equivalent(under, F("p ; ~r")));
}

TEST_CASE("resolution-based forgetting") {
  ClauseSet kb = clauses({{"shoes", "~grass"}, {"grass", "~rained"}, {"grass", "~sprinkler_on"}});
  CHECK(dp_forget_atom(kb, Atom("grass")) == clauses({{"shoes", "~rained"}, {"shoes", "~sprinkler_on"}}));
  CHECK(dp_forget_atom(clauses({{"p"}}), Atom("q")) == clauses({{"p"}}));
  ClauseSet all4 = clauses({{"p", "q"}, {"~p", "q"}, {"p", "~q"}, {"~p", "~q"}});
  ClauseSet r = dp_forget_atom(all4, Atom("p"));
  CHECK(r == clauses({{"q"}, {"~q"}}));
  CHECK_FALSE(testkit::truth_table_sat(cnf_formula(r)));
}

TEST_CASE("subtask scheduling") {
  Subtask sat = schedule_subtask(F("forg([p, q, r], (p <- q), (q <- r))"));
  CHECK(sat.kind == Subtask::Kind::Sat);

  Subtask qbf = schedule_subtask(F("forg([p], forg([q], (p <-> q), p))"));
  CHECK(qbf.kind == Subtask::Kind::Qbf);
  CHECK(qbf.node == 0);

  Subtask dp = schedule_subtask(F("forg([grass_is_wet], kb1)"));
  CHECK(dp.kind == Subtask::Kind::Dp);
  CHECK(dp.atom == Atom("grass_is_wet"));

  Subtask sh =
      schedule_subtask(F("forg([p], (p ; a ; b), (p ; c ; d), (p ; x), (~p ; e ; f), (~p ; g ; h), (~p ; y))"));
  CHECK(sh.kind == Subtask::Kind::Shannon);

  // Leftmost-innermost among equals.
  Subtask left = schedule_subtask(F("forg([p], (p ; a), (~p ; b)) ; forg([q], (q ; a), (~q ; b))"));
  CHECK(left.node == 1);
  CHECK(schedule_subtask(F("p ; q")).kind == Subtask::Kind::None);
}

TEST_CASE("limits and errors") {
  EngineConfig tight;
  tight.step_limit = 1;
  tight.shannon_guard = false;
  CHECK_THROWS_AS(elim("forg([p, q], (p ; q ; a), (~p ; q ; b), (p ; ~q ; c), (~p ; ~q ; d), x)", tight), LimitError);
  Program self = builtin_program();
  register_macro(self, MacroDef{"loop", {{"F", ParamKind::Formula}}, Formula::macro_call("loop", {Formula::param("F")})});
  CHECK_THROWS_AS(eliminate(Formula::macro_call("loop", {F("p")}), self), LimitError);
}

TEST_CASE("engine trace") {
  std::ostringstream trace;
  EngineConfig cfg;
  cfg.trace = &trace;
  cfg.shannon_guard = false;
  elim("forg([grass_is_wet], kb1)", cfg);
  CHECK(trace.str().find("resolution on grass_is_wet") != std::string::npos);
}

TEST_CASE("engine with external solvers agrees with the internal one") {
  EngineConfig ext;
  ext.shannon_guard = false;
  ext.solvers.external_sat_cmd = std::string(FAKE_SOLVER) + " exit";
  ext.solvers.external_qbf_cmd = std::string(FAKE_SOLVER) + " text";
  EngineStats stats;
  EngineConfig internal;
  internal.shannon_guard = false;
  for (const char* q : {"forg([p, q, r], (p ; q), (~p ; r), (~q ; ~r), (p ; ~r)), s",
                        "forg([p], ~forg([q], (p <-> q), (p ; q))), s"}) {
    Formula a = eliminate(F(q), kb_program(), ext, &stats);
    Formula b = elim(q, internal);
    CHECK(a == b);
  }
  CHECK(stats.sat_calls + stats.qbf_calls > 0);
  CHECK(stats.solver_fallbacks == 0);

  EngineConfig broken;
  broken.shannon_guard = false;
  broken.solvers.external_sat_cmd = std::string(FAKE_SOLVER) + " garbage";
  EngineStats bs;
  Formula a = eliminate(F("forg([p, q, r], (p ; q), (~p ; r), (~q ; ~r), (p ; ~r)), s"), kb_program(), broken, &bs);
  CHECK(equivalent(a, F("s")));
  CHECK(bs.solver_fallbacks == 1);
  CHECK(bs.diagnostics.size() == 1);
}

TEST_CASE("property: elimination is sound") {
  testkit::Rng rng(62);
  auto atoms = soundness_atoms();
  const Program prog = builtin_program();
  for (int i = 0; i < 300; ++i) {
    Formula f = testkit::random_operator_formula(rng, atoms, 3);
    Formula r = eliminate(f, prog);
    REQUIRE(r.operator_free());
    REQUIRE_FALSE(has_reserved_atoms(r));
    INFO(print_ast(f));
    REQUIRE(testkit::NaiveSemantics::same(f, r));
  }
}

TEST_CASE("property: forgotten atoms disappear") {
  testkit::Rng rng(63);
  auto atoms = testkit::letters(6);
  for (int i = 0; i < 200; ++i) {
    Formula g = testkit::random_plain(rng, atoms, 4);
    Scope s = testkit::random_scope(rng, atoms);
    Formula f = Formula::forg(s, g);
    Formula r = eliminate(f, builtin_program());
    LiteralSet lits = ground_scope(s, atoms_of(f));
    AtomSet rest = atoms_of(r);
    for (const auto& l : lits)
      if (lits.count(l.complement())) REQUIRE(rest.count(l.atom) == 0);
    REQUIRE(testkit::NaiveSemantics::same(f, r));
  }
}

TEST_CASE("property: resolution forgetting matches the oracle") {
  testkit::Rng rng(64);
  auto atoms = testkit::letters(7);
  for (int i = 0; i < 300; ++i) {
    ClauseSet c = testkit::random_clauses(rng, atoms, 12, 4);
    Atom a = atoms[static_cast<std::size_t>(testkit::uniform(rng, 0, 6))];
    Formula expected = Formula::forg(Scope::item(a), cnf_formula(c));
    REQUIRE(testkit::NaiveSemantics::same(cnf_formula(dp_forget_atom(c, a)), expected));
  }
}

TEST_CASE("property: circumscription reduction matches the oracle") {
  testkit::Rng rng(65);
  auto atoms = testkit::letters(6);
  for (int i = 0; i < 200; ++i) {
    Formula g = testkit::random_plain(rng, atoms, 4);
    Scope s = testkit::random_scope(rng, atoms);
    AtomSet sig = atoms_of(Formula::circ(s, g));
    Formula red = build_circ_reduction(s, g, sig);
    Formula r = eliminate(red, builtin_program());
    REQUIRE(testkit::NaiveSemantics::same(Formula::circ(s, g), r));
  }
}

TEST_CASE("property: simplification preserves meaning and reaches a fixpoint") {
  testkit::Rng rng(66);
  auto atoms = testkit::letters(5);
  for (int i = 0; i < 300; ++i) {
    Formula f = testkit::random_operator_formula(rng, atoms, 2);
    Formula p = rewrite_to_primitives(f, atoms_of(f));
    Formula s = simplify(p);
    REQUIRE_FALSE(simplify_step(s).has_value());
    REQUIRE(simplify(s) == s);
    REQUIRE(testkit::NaiveSemantics::same(s, f));
  }
}

TEST_CASE("property: committed shannon expansions never grow the formula") {
  testkit::Rng rng(67);
  auto atoms = testkit::letters(6);
  const std::regex sizes(R"(size (\d+) -> (\d+))");
  std::size_t commits = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = Formula::forg(testkit::random_scope(rng, atoms), testkit::random_plain(rng, atoms, 5));
    std::ostringstream trace;
    EngineConfig cfg;
    cfg.trace = &trace;
    eliminate(f, builtin_program(), cfg);
    std::string t = trace.str();
    for (auto it = std::sregex_iterator(t.begin(), t.end(), sizes); it != std::sregex_iterator(); ++it) {
      ++commits;
      REQUIRE(std::stoul((*it)[2]) <= std::stoul((*it)[1]));
    }
  }
  CHECK(commits > 0);
}

TEST_CASE("property: elimination is deterministic") {
  testkit::Rng rng(68);
  auto atoms = soundness_atoms();
  for (int i = 0; i < 100; ++i) {
    Formula f = testkit::random_operator_formula(rng, atoms, 3);
    REQUIRE(eliminate(f, builtin_program()) == eliminate(f, builtin_program()));
  }
}

TEST_CASE("property: merged forgetting matches nested forgetting") {
  testkit::Rng rng(69);
  auto atoms = testkit::letters(5);
  EngineConfig no_merge;
  no_merge.merge_forgetting = false;
  for (int i = 0; i < 200; ++i) {
    Formula f = Formula::forg(testkit::random_scope(rng, atoms),
                              Formula::forg(testkit::random_scope(rng, atoms), testkit::random_plain(rng, atoms, 4)));
    Formula merged = eliminate(f, builtin_program());
    Formula nested = eliminate(f, builtin_program(), no_merge);
    REQUIRE(testkit::NaiveSemantics::same(merged, nested));
    REQUIRE(testkit::NaiveSemantics::same(merged, f));
  }
}
