#include "doctest.h"

#include <algorithm>

#include "smk/parser.hpp"
#include "smk/random.hpp"
#include "smk/semantics.hpp"
#include "support/oracles.hpp"

using namespace smk;

namespace {

FiniteStructure reach(const char* p_rows, const char* e_rows) {
  return parse_structure(std::string("domain: 1 2\nrel e/2:\n") + e_rows + "rel p/1:\n" + p_rows);
}

const char* kReach = "p(s). p(Y) :- p(X), e(X,Y). :- not p(t).";

FiniteStructure with_constants(FiniteStructure s) {
  s.add_function("s", 0);
  s.add_function("t", 0);
  s.set_value("s", {}, 0);
  s.set_value("t", {}, 1);
  return s;
}

}  // namespace

TEST_CASE("reduct drops instances whose evaluated part fails") {
  Program p = parse_program("r(X) :- q(X), not s(X).");
  auto st = parse_structure("domain: a\nrel q/1:\n  a\nrel s/1:\nrel r/1:\n");
  PropositionalProgram pp = reduct(p, st);
  REQUIRE(pp.rules.size() == 1);
  CHECK(pp.rules[0].body.empty());
  CHECK(pp.atoms.atom(pp.rules[0].head[0]) == GroundAtom{"r", {0}});

  st.set("s", {0});
  CHECK(reduct(p, st).rules.empty());
}

TEST_CASE("odd loop has an empty reduct and no stable model") {
  Program p = parse_program("p(X) :- not p(X).");
  auto st = parse_structure("domain: a\nrel p/1:\n  a\n");
  CHECK(reduct(p, st).rules.empty());
  CHECK_FALSE(check_stable(p, st));
  st.set("p", {0}, false);
  CHECK_FALSE(check_stable(p, st));
  CHECK_FALSE(check_stable_progression(p, st));
}

TEST_CASE("minimal models of small propositional programs") {
  PropositionalProgram pp;
  int a = pp.atoms.intern({"a", {}});
  int b = pp.atoms.intern({"b", {}});
  pp.rules.push_back({{}, {a, b}});
  AtomSet u{{"a", {}}, {"b", {}}};
  auto ms = minimal_models(pp, u);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] == AtomSet{{"a", {}}});
  CHECK(ms[1] == AtomSet{{"b", {}}});

  PropositionalProgram empty;
  CHECK(minimal_models(empty, AtomSet{{"a", {}}}) == std::vector<AtomSet>{AtomSet{}});

  PropositionalProgram bad;
  int x = bad.atoms.intern({"a", {}});
  bad.rules.push_back({{x}, {}});
  bad.rules.push_back({{}, {x}});
  CHECK(minimal_models(bad, AtomSet{{"a", {}}}).empty());
}

TEST_CASE("reachability instance") {
  Program p = parse_program(kReach);
  auto good = with_constants(reach("  1\n  2\n", "  1 2\n"));
  CHECK(check_stable(p, good));
  CHECK(check_stable_progression(p, good));
  CHECK(check_stable_progression_units(p, good));
  auto bad = with_constants(reach("  1\n", "  1 2\n"));
  CHECK_FALSE(check_stable(p, bad));
  CHECK_FALSE(check_stable_progression(p, bad));
}

TEST_CASE("progression on the path graph") {
  Program p = parse_program("s(X) | t(X). t(Y) :- t(X), e(X,Y).");
  auto st = parse_structure("domain: 1 2 3\nrel e/2:\n  1 2\n  2 3\nrel s/1:\nrel t/1:\n");
  PropositionalProgram pp = reduct(p, st);
  ClauseSet one = progression_step(pp, {});
  CHECK(one.clauses.size() == 3);
  ClauseSet fix = progression_fixpoint(p, st);
  CHECK(fix.clauses.size() == 6);
  CHECK(progression_step(pp, fix) == fix);
}

TEST_CASE("progression examples") {
  PropositionalProgram pp;
  int a = pp.atoms.intern({"a", {}});
  int b = pp.atoms.intern({"b", {}});
  int c = pp.atoms.intern({"c", {}});
  pp.rules.push_back({{a, b}, {c}});
  ClauseSet ls;
  ls.clauses = {{{"a", {}}}, {{"b", {}}}};
  ClauseSet out = progression_step(pp, ls);
  CHECK(out.clauses == std::set<Clause>{{{"c", {}}}});
  CHECK(progression_step(pp, {}).clauses.empty());

  Program fact = parse_program("p.");
  auto st = parse_structure("domain: a\nrel p/0:\n  ()\n");
  CHECK(progression_fixpoint(fact, st).clauses == std::set<Clause>{{{"p", {}}}});
  CHECK(check_stable_progression_units(fact, st));
}

TEST_CASE("enumerate reachability expansions") {
  Program p = parse_program(kReach);
  auto st = with_constants(parse_structure("domain: 1 2\nrel e/2:\n  1 2\n"));
  Vocabulary aux;
  aux.add_predicate("p", 1);
  auto models = enumerate_stable(p, st, aux);
  REQUIRE(models.size() == 1);
  CHECK(models[0].tuples("p").size() == 2);

  auto none = with_constants(parse_structure("domain: 1 2\nrel e/2:\n"));
  CHECK(enumerate_stable(p, none, aux).empty());
}

TEST_CASE("enumerate over disjunction and auxiliary constants") {
  Program p = parse_program("s(X) | t(X).");
  auto st = parse_structure("domain: a b\n");
  CHECK(enumerate_stable(p, st, {}).size() == 4);

  Program q = parse_program("p(c).");
  Vocabulary aux;
  aux.add_function("c", 0);
  CHECK(enumerate_stable(q, st, aux).size() == 2);
}

TEST_CASE("stability agrees with the brute-force oracle") {
  Rng rng(99);
  int stable = 0;
  for (int i = 0; i < 150; ++i) {
    Program p = random_program(rng);
    size_t n = static_cast<size_t>(std::uniform_int_distribution<int>(1, 3)(rng));
    FiniteStructure s = random_structure(rng, p.vocabulary(), n);
    CAPTURE(to_string(p));
    CAPTURE(to_string(s));
    bool expected = oracle::is_stable(p, s);
    CHECK(check_stable(p, s) == expected);
    CHECK(check_stable_progression(p, s) == expected);
    stable += expected;
  }
  CHECK(stable > 0);
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    Program p = random_program(rng);
    size_t n = static_cast<size_t>(std::uniform_int_distribution<int>(1, 2)(rng));
    Vocabulary ext;
    Vocabulary aux;
    for (const auto& [name, arity] : p.vocabulary().predicates()) {
      if (p.intensional().count(name)) {
        aux.add_predicate(name, arity);
      } else if (name == "a" && i % 2 == 0) {
        aux.add_predicate(name, arity);
      } else {
        ext.add_predicate(name, arity);
      }
    }
    FiniteStructure s = random_structure(rng, ext, n);
    CAPTURE(to_string(p));
    auto got = enumerate_stable(p, s, aux);
    auto expected = oracle::stable_expansions(p, s, aux);
    std::vector<std::string> a, b;
    for (const auto& m : got) a.push_back(to_string(m));
    for (const auto& m : expected) b.push_back(to_string(m));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("progression step is monotone") {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    Program p = random_program(rng);
    FiniteStructure s = random_structure(rng, p.vocabulary(), 2);
    PropositionalProgram pp = reduct(p, s);
    auto trace = progression_trace(pp);
    for (size_t k = 0; k + 1 < trace.size(); ++k) {
      ClauseSet small = trace[k];
      ClauseSet large = trace[k + 1];
      ClauseSet a = progression_step(pp, small);
      ClauseSet b = progression_step(pp, large);
      CHECK(std::includes(b.clauses.begin(), b.clauses.end(), a.clauses.begin(), a.clauses.end()));
      CHECK((!a.bottom || b.bottom));
    }
    ClauseSet half;
    auto last = trace.back();
    size_t idx = 0;
    for (const auto& c : last.clauses) {
      if (idx++ % 2 == 0) half.clauses.insert(c);
    }
    ClauseSet a = progression_step(pp, half);
    ClauseSet b = progression_step(pp, last);
    CHECK(std::includes(b.clauses.begin(), b.clauses.end(), a.clauses.begin(), a.clauses.end()));
  }
}
