#pragma once

#include <cstdint>
#include <random>

#include "smk/formula.hpp"
#include "smk/structure.hpp"
#include "smk/syntax.hpp"

namespace smk {

using Rng = std::mt19937_64;

struct RandomProgramOptions {
  int max_rules = 4;
  int max_body = 3;
  /// Heads have at most this many atoms; 1 gives normal programs.
  int max_head = 2;
  bool negation = true;
  bool equality = true;
  /// Candidate head predicates: name/arity pairs drawn from.
  std::vector<std::pair<std::string, int>> intensional{{"p", 1}, {"q", 0}, {"r", 2}};
  std::vector<std::pair<std::string, int>> extensional{{"e", 2}, {"a", 1}};
  std::vector<std::string> variables{"X", "Y", "Z"};
};

/// A random program with at least one rule with a nonempty head.
Program random_program(Rng& rng, const RandomProgramOptions& options = {});

/// Each relation tuple holds with probability 1/2; function values uniform.
FiniteStructure random_structure(Rng& rng, const Vocabulary& v, size_t size);

struct RandomFormulaOptions {
  int depth = 3;
  std::vector<std::pair<std::string, int>> predicates{{"e", 2}, {"a", 1}, {"q", 0}};
  /// Probability weight of quantifier nodes against connectives.
  int quantifier_weight = 2;
};

/// A random first-order sentence over the given predicates, with every
/// connective and quantifier kind.
Formula random_sentence(Rng& rng, const RandomFormulaOptions& options = {});

struct RandomNormalFormOptions {
  int max_existential_so = 1;
  int max_universal_so = 1;
  int max_so_arity = 1;
  int max_universal = 2;
  int max_existential = 1;
  int max_disjuncts = 3;
  int max_literals = 3;
  std::vector<std::pair<std::string, int>> predicates{{"e", 2}};
};

/// A random sentence EX* ALL* ALL^n SOME* with a disjunctive normal form
/// matrix; every quantified symbol occurs in the matrix.
Formula random_normal_form_sentence(Rng& rng, const RandomNormalFormOptions& options = {});

}  // namespace smk
