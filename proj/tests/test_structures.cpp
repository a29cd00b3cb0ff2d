#include "doctest.h"

#include "smk/random.hpp"
#include "smk/structure.hpp"

using namespace smk;

TEST_CASE("structure text round-trips") {
  const char* text =
      "domain: a b c\n"
      "rel e/2:\n"
      "  a b\n"
      "  b c\n"
      "rel p/0:\n"
      "  ()\n"
      "fun f/1:\n"
      "  a b\n"
      "  b c\n"
      "  c a\n"
      "fun k/0:\n"
      "  b\n";
  FiniteStructure s = parse_structure(text);
  CHECK(s.size() == 3);
  CHECK(s.holds("e", {0, 1}));
  CHECK_FALSE(s.holds("e", {1, 0}));
  CHECK(s.holds("p", {}));
  CHECK(s.value("f", {2}) == 0);
  CHECK(s.value("k", {}) == 1);
  CHECK(parse_structure(to_string(s)) == s);
  CHECK(to_string(parse_structure(to_string(s))) == to_string(s));
}

TEST_CASE("structure input errors") {
  CHECK_THROWS_AS(parse_structure("domain: a\nrel e/2:\n  a\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("domain: a b\nfun f/1:\n  a b\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("domain: a\nrel e/1:\n  z\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("domain: a a\n"), SyntaxError);
}

TEST_CASE("instances of a predicate set") {
  FiniteStructure s = parse_structure("domain: 1 2\nrel e/2:\n  1 2\nrel s/1:\n  1\nrel t/1:\n  2\n");
  CHECK(instances(s, {"e"}) == std::set<GroundAtom>{{"e", {0, 1}}});
  CHECK(instances(s, {}).empty());
  CHECK(instances(s, {"s", "t"}) == std::set<GroundAtom>{{"s", {0}}, {"t", {1}}});
}

TEST_CASE("expansion counts") {
  FiniteStructure s({"a", "b"});
  Vocabulary unary;
  unary.add_predicate("u", 1);
  CHECK(expansions(s, unary).size() == 4);
  CHECK(expansions(s, Vocabulary{}).size() == 1);
  CHECK(expansions(s, Vocabulary{})[0] == s);
  Vocabulary fun;
  fun.add_function("f", 1);
  CHECK(expansions(s, fun).size() == 4);

  for (size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    FiniteStructure base(names);
    for (int ra = 0; ra <= 2; ++ra) {
      for (int fa = 0; fa <= 1; ++fa) {
        Vocabulary v;
        v.add_predicate("r", ra);
        v.add_function("g", fa);
        uint64_t expected = (uint64_t(1) << tuple_count(n, ra));
        uint64_t values = 1;
        for (uint64_t i = 0; i < tuple_count(n, fa); ++i) values *= n;
        expected *= values;
        CHECK(expansion_count(n, v) == expected);
        ExpansionStream stream(base, v);
        uint64_t seen = 0;
        while (stream.next()) ++seen;
        CHECK(seen == expected);
        stream.restart();
        CHECK(stream.next().has_value());
      }
    }
  }
  Vocabulary big;
  big.add_predicate("r", 2);
  CHECK_THROWS_AS(ExpansionStream(FiniteStructure({"a", "b", "c"}), big, 16), ResourceLimit);
}

TEST_CASE("successor structure predicate") {
  FiniteStructure s = parse_structure(
      "domain: a b c\nrel succ/2:\n  b a\n  a c\nrel first/1:\n  b\nrel last/1:\n  c\n");
  CHECK(is_successor_structure(s));
  s.set("succ", {2, 1});
  CHECK_FALSE(is_successor_structure(s));
  FiniteStructure t = parse_structure("domain: a b\nrel succ/2:\n  a b\nrel first/1:\n  a\nrel last/1:\n  a\n");
  CHECK_FALSE(is_successor_structure(t));
  FiniteStructure one = parse_structure("domain: a\nrel succ/2:\nrel first/1:\n  a\nrel last/1:\n  a\n");
  CHECK(is_successor_structure(one));
}

TEST_CASE("restrict and absorb") {
  Rng rng(3);
  Vocabulary v;
  v.add_predicate("e", 2);
  v.add_predicate("p", 1);
  FiniteStructure s = random_structure(rng, v, 3);
  Vocabulary only_e;
  only_e.add_predicate("e", 2);
  FiniteStructure r = s.restrict(only_e);
  CHECK_FALSE(r.interprets("p"));
  Vocabulary only_p;
  only_p.add_predicate("p", 1);
  r.absorb(s.restrict(only_p));
  CHECK(r == s);
}
