#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "smk/ground.hpp"
#include "smk/structure.hpp"
#include "smk/syntax.hpp"

namespace smk {

using AtomSet = std::set<GroundAtom>;

/// Ground plain rule body -> head over the atoms of a PropositionalProgram.
struct PropositionalRule {
  std::vector<int> body;
  std::vector<int> head;  // empty: constraint
};

struct PropositionalProgram {
  AtomTable atoms;
  std::vector<PropositionalRule> rules;
};

/// First-order GL reduct: every instance whose non-positive-intensional body
/// part holds in s, with that part removed.
PropositionalProgram reduct(const Program& p, const FiniteStructure& s);

bool is_model(const PropositionalProgram& pp, const AtomSet& m);

struct MinimalModelOptions {
  size_t universe_cap = 20;
};

/// All subset-minimal models of pp drawn from universe, ordered by
/// cardinality and then lexicographically.
std::vector<AtomSet> minimal_models(const PropositionalProgram& pp, const AtomSet& universe,
                                    const MinimalModelOptions& options = {});

/// Ins(s, intensional(p)) is a minimal model of reduct(p, s).
bool check_stable(const Program& p, const FiniteStructure& s);

/// A positive clause is its sorted, duplicate-free atom list.
using Clause = std::vector<GroundAtom>;

/// Clauses plus a flag recording that a constraint derived the empty clause.
struct ClauseSet {
  std::set<Clause> clauses;
  bool bottom = false;

  bool operator==(const ClauseSet&) const = default;
};

struct ProgressionOptions {
  size_t clause_cap = size_t(1) << 20;
};

/// One application of the progression operator.
ClauseSet progression_step(const PropositionalProgram& pp, const ClauseSet& ls,
                           const ProgressionOptions& options = {});
/// Gamma up 0, 1, ... until the first repetition; the last entry is the fixpoint.
std::vector<ClauseSet> progression_trace(const PropositionalProgram& pp, const ProgressionOptions& options = {});
ClauseSet progression_fixpoint(const Program& p, const FiniteStructure& s, const ProgressionOptions& options = {});

/// m satisfies every clause and no atom of m can be dropped.
bool is_minimal_model(const ClauseSet& cs, const AtomSet& m);

/// Ins(s, intensional(p)) is a minimal model of the progression fixpoint.
bool check_stable_progression(const Program& p, const FiniteStructure& s);
/// The normal-program reading: Ins equals the atoms of the unit clauses.
/// Throws PreconditionError for disjunctive programs.
bool check_stable_progression_units(const Program& p, const FiniteStructure& s);

struct EnumerateOptions {
  /// Largest number of expansions by non-intensional auxiliary symbols visited.
  uint64_t expansion_cap = uint64_t(1) << 16;
  GroundOptions ground;
};

/// Thrown when the cap stops an enumeration early; found counts the stable
/// expansions reported before stopping.
class EnumerationLimit : public ResourceLimit {
 public:
  EnumerationLimit(const std::string& what, uint64_t found) : ResourceLimit(what), found(found) {}
  uint64_t found;
};

/// Calls emit with every expansion of s by aux and the intensional
/// predicates of p that is a stable model of p. Expansions by the
/// non-intensional aux symbols are visited in stream order; the stable
/// models of each are reported sorted by their printed form. Returning
/// false from emit stops the search. Returns the number reported.
uint64_t enumerate_stable(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                          const std::function<bool(const FiniteStructure&)>& emit,
                          const EnumerateOptions& options = {});
std::vector<FiniteStructure> enumerate_stable(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                                              const EnumerateOptions& options = {});
/// True when some stable expansion exists.
bool has_stable_expansion(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                          const EnumerateOptions& options = {});

/// Vocabulary of the symbols of p that s does not interpret.
Vocabulary uninterpreted(const Program& p, const FiniteStructure& s);

std::string to_string(const PropositionalProgram& pp, const FiniteStructure& s);
std::string to_string(const Clause& c, const FiniteStructure& s);
std::string to_string(const ClauseSet& cs, const FiniteStructure& s);

}  // namespace smk
