#pragma once

#include <functional>
#include <map>
#include <vector>

#include "smk/structure.hpp"
#include "smk/syntax.hpp"

namespace smk {

/// Interns ground atoms as dense ids.
class AtomTable {
 public:
  int intern(const GroundAtom& a);
  /// -1 when absent.
  int find(const GroundAtom& a) const;
  const GroundAtom& atom(int id) const { return atoms_.at(id); }
  size_t size() const { return atoms_.size(); }

 private:
  std::map<GroundAtom, int> ids_;
  std::vector<GroundAtom> atoms_;
};

/// A ground rule instance. Only atoms of symbolic predicates appear; every
/// other body literal was evaluated in the structure and held.
struct GroundRule {
  std::vector<int> head;
  std::vector<int> pos;
  std::vector<int> neg;
};

struct GroundOptions {
  /// Maximum number of variable assignments tried per rule.
  uint64_t instance_cap = uint64_t(1) << 24;
};

/// Grounds p over s. Atoms of predicates in `symbolic` are kept (positive
/// occurrences in pos, negative in neg, heads always); all other literals
/// are evaluated in s and instances whose evaluated part fails are dropped.
/// Head atoms must be symbolic. Duplicated instances are removed.
std::vector<GroundRule> ground(const Program& p, const FiniteStructure& s, const std::set<std::string>& symbolic,
                               bool keep_negative_symbolic, AtomTable& atoms, const GroundOptions& options = {});

/// Evaluates a ground term of the program in s.
int eval_term(const Term& t, const FiniteStructure& s, const std::map<std::string, int>& vars);

}  // namespace smk
