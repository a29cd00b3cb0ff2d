#include "doctest.h"

#include "smk/eval.hpp"
#include "smk/parser.hpp"
#include "smk/random.hpp"
#include "support/oracles.hpp"

using namespace smk;

namespace {

FiniteStructure domain(size_t n) {
  std::vector<std::string> names;
  for (size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return FiniteStructure(names);
}

}  // namespace

TEST_CASE("singleton sentence") {
  Formula f = parse_formula("SOME x . ALL y . x = y");
  CHECK(eval_formula(domain(1), f));
  CHECK_FALSE(eval_formula(domain(2), f));
}

TEST_CASE("no finite structure has an unbounded strict order") {
  Formula f = parse_formula(
      "EX R/2 . ((ALL x . ALL y . ALL z . ((R(x,y) & R(y,z)) -> R(x,z))) & (ALL x . ~R(x,x)) & "
      "(ALL x . SOME y . R(x,y)))");
  for (size_t n = 1; n <= 3; ++n) CHECK_FALSE(eval_formula(domain(n), f));
}

TEST_CASE("function variables and free variables") {
  Formula f = parse_formula("EX FUN g/1 . ALL x . ~(g(x) = x)");
  CHECK_FALSE(eval_formula(domain(1), f));
  CHECK(eval_formula(domain(2), f));
  Formula open = Formula::forall("y", Formula::atom(Atom::eq(Term::var("x"), Term::var("y"))));
  CHECK(eval_formula(domain(1), open, {{"x", 0}}));
  CHECK_THROWS_AS(eval_formula(domain(1), open), PreconditionError);
  CHECK_THROWS_AS(eval_formula(domain(1), parse_formula("SOME x . e(x,x)")), SyntaxError);
}

TEST_CASE("second-order cap") {
  Formula f = parse_formula("EX R/2 . ALL x . R(x,x)");
  EvalOptions tight;
  tight.so_cap = 100;
  CHECK_THROWS_AS(eval_formula(domain(3), f, {}, tight), ResourceLimit);
  CHECK(eval_formula(domain(3), f));
  CHECK(so_candidates({"R", 2, false}, 3) == 512);
  CHECK(so_candidates({"g", 1, true}, 3) == 27);
}

TEST_CASE("differential against the direct evaluator") {
  Rng rng(2024);
  Vocabulary v;
  v.add_predicate("e", 2);
  v.add_predicate("a", 1);
  v.add_predicate("q", 0);
  int agreed = 0;
  for (int i = 0; i < 100; ++i) {
    Formula f = random_sentence(rng, RandomFormulaOptions{4});
    size_t n = static_cast<size_t>(std::uniform_int_distribution<int>(1, 3)(rng));
    FiniteStructure s = random_structure(rng, v, n);
    CAPTURE(to_string(f));
    bool expected = oracle::eval(s, f);
    CHECK(eval_formula(s, f) == expected);
    agreed += eval_formula(s, f) == expected;
  }
  CHECK(agreed == 100);

  for (int i = 0; i < 60; ++i) {
    Formula f = random_normal_form_sentence(rng);
    FiniteStructure s = random_structure(rng, Vocabulary([] {
                                           Vocabulary e;
                                           e.add_predicate("e", 2);
                                           return e;
                                         }()),
                                         2);
    CAPTURE(to_string(f));
    CHECK(eval_formula(s, f) == oracle::eval(s, f));
  }
}
