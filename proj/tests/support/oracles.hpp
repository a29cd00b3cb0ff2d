#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond the data types.

#include <vector>

#include "smk/formula.hpp"
#include "smk/structure.hpp"
#include "smk/syntax.hpp"

namespace oracle {

/// Direct recursive evaluation; second-order quantifiers by exhaustive
/// enumeration of tables.
bool eval(const smk::FiniteStructure& s, const smk::Formula& f);

/// Stability by grounding every rule over every assignment and trying every
/// proper subset of the intensional atoms.
bool is_stable(const smk::Program& p, const smk::FiniteStructure& s);

/// Every expansion of s by extra that is_stable accepts.
std::vector<smk::FiniteStructure> stable_expansions(const smk::Program& p, const smk::FiniteStructure& s,
                                                    const smk::Vocabulary& extra);

}  // namespace oracle
