#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "smk/formula.hpp"
#include "smk/structure.hpp"

namespace smk {

using Assignment = std::map<std::string, int>;

struct EvalOptions {
  /// Largest number of candidate tables allowed for a single second-order
  /// quantified symbol.
  uint64_t so_cap = uint64_t(1) << 24;
};

/// Tarskian truth of f in s under a. Second-order quantifiers range over all
/// relations / total functions on the domain. Throws SyntaxError for a symbol
/// that is neither interpreted nor bound, ResourceLimit when a quantified
/// symbol exceeds the cap.
bool eval_formula(const FiniteStructure& s, const Formula& f, const Assignment& a = {},
                  const EvalOptions& options = {});

/// Candidate count for one second-order symbol over a domain of size n.
uint64_t so_candidates(const SoSymbol& sym, size_t n);
/// Worst-case number of second-order candidate combinations visited: the
/// product over nested second-order quantifiers. Saturates at UINT64_MAX.
uint64_t so_enumeration_size(const Formula& f, size_t n);

}  // namespace smk
