#pragma once

#include <cstdint>
#include <vector>

namespace smk {

/// Literal encoding: 2*var for the positive literal, 2*var+1 for the negation.
using Lit = int;
inline Lit mk_lit(int var, bool positive = true) { return 2 * var + (positive ? 0 : 1); }
inline Lit negate(Lit l) { return l ^ 1; }
inline int lit_var(Lit l) { return l >> 1; }
inline bool lit_positive(Lit l) { return (l & 1) == 0; }

/// Small CDCL solver: two watched literals, first-UIP learning, VSIDS,
/// Luby restarts, phase saving starting from false. Clauses may be added
/// between calls to solve(); learnt clauses are kept.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  /// Returns false when the clause set became trivially unsatisfiable.
  bool add_clause(std::vector<Lit> clause);
  bool solve();
  /// Value of a variable in the last model.
  bool model_value(int var) const { return model_.at(var); }
  const std::vector<bool>& model() const { return model_; }

  uint64_t conflicts() const { return conflicts_; }

 private:
  enum : int8_t { kFalse = -1, kUndef = 0, kTrue = 1 };

  int8_t value(Lit l) const {
    int8_t v = assign_[lit_var(l)];
    return lit_positive(l) ? v : static_cast<int8_t>(-v);
  }
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  void backtrack(int level);
  int pick_branch();
  void bump(int var);
  void heap_insert(int var);
  void heap_up(int pos);
  void heap_down(int pos);
  int heap_pop();
  int attach(std::vector<Lit> clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching its negation becoming false
  std::vector<int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> phase_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  double var_inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<char> seen_;
  std::vector<bool> model_;
  bool unsat_ = false;
  uint64_t conflicts_ = 0;
};

}  // namespace smk
