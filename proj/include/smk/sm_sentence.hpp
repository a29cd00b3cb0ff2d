#pragma once

#include "smk/formula.hpp"
#include "smk/syntax.hpp"

namespace smk {

/// SM(Π) = φ ∧ ∀τ*(τ* < τ → ¬φ*). φ is the conjunction of the universal
/// closures of the rules; φ* replaces every intensional P by the predicate
/// variable P* in heads and in non-negated body literals.
Formula build_sm_sentence(const Program& p);

}  // namespace smk
