#include "smk/sat.hpp"

#include <algorithm>

namespace smk {

namespace {

// Luby sequence, 1-based: 1 1 2 1 1 2 4 ...
uint64_t luby(uint64_t i) {
  uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  uint64_t x = i;
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return uint64_t(1) << seq;
}

}  // namespace

int SatSolver::new_var() {
  int v = num_vars();
  assign_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(false);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(v);
  return v;
}

void SatSolver::enqueue(Lit l, int reason) {
  int v = lit_var(l);
  assign_[v] = lit_positive(l) ? kTrue : kFalse;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::attach(std::vector<Lit> clause) {
  int id = static_cast<int>(clauses_.size());
  watches_[clause[0]].push_back(id);
  watches_[clause[1]].push_back(id);
  clauses_.push_back(std::move(clause));
  return id;
}

bool SatSolver::add_clause(std::vector<Lit> clause) {
  if (unsat_) return false;
  backtrack(0);
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  std::vector<Lit> kept;
  for (size_t i = 0; i < clause.size(); ++i) {
    Lit l = clause[i];
    if (i + 1 < clause.size() && clause[i + 1] == negate(l)) return true;  // tautology
    int8_t v = value(l);
    if (v == kTrue) return true;
    if (v == kUndef) kept.push_back(l);
  }
  if (kept.empty()) {
    unsat_ = true;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return !unsat_;
  }
  attach(std::move(kept));
  return true;
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit falsified = negate(p);
    std::vector<int>& ws = watches_[falsified];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      int cid = ws[i++];
      std::vector<Lit>& c = clauses_[cid];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = cid;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(cid);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = cid;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cid;
      }
      enqueue(c[0], cid);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.assign(1, 0);
  int current = static_cast<int>(trail_lim_.size());
  int path = 0;
  Lit p = -1;
  int index = static_cast<int>(trail_.size()) - 1;
  int clause = conflict;
  do {
    const std::vector<Lit>& c = clauses_[clause];
    for (size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      Lit q = c[k];
      int v = lit_var(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (level_[v] == current) {
        ++path;
      } else {
        learnt.push_back(q);
      }
    }
    while (!seen_[lit_var(trail_[index])]) --index;
    p = trail_[index--];
    clause = reason_[lit_var(p)];
    seen_[lit_var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = negate(p);

  backtrack_level = 0;
  size_t max_i = 1;
  for (size_t k = 1; k < learnt.size(); ++k) {
    if (level_[lit_var(learnt[k])] > backtrack_level) {
      backtrack_level = level_[lit_var(learnt[k])];
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[lit_var(l)] = 0;
  var_inc_ *= 1.0 / 0.95;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (size_t i = trail_.size(); i > static_cast<size_t>(trail_lim_[level]); --i) {
    int v = lit_var(trail_[i - 1]);
    phase_[v] = assign_[v] == kTrue;
    assign_[v] = kUndef;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

void SatSolver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void SatSolver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void SatSolver::heap_up(int pos) {
  int v = heap_[pos];
  while (pos > 0) {
    int parent = (pos - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = pos;
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

void SatSolver::heap_down(int pos) {
  int v = heap_[pos];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = pos;
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

int SatSolver::heap_pop() {
  int top = heap_[0];
  heap_pos_[top] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

int SatSolver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[v] == kUndef) return v;
  }
  return -1;
}

bool SatSolver::solve() {
  if (unsat_) return false;
  backtrack(0);
  if (propagate() >= 0) {
    unsat_ = true;
    return false;
  }
  std::vector<Lit> learnt;
  uint64_t restart_round = 0;
  uint64_t budget = 100 * luby(restart_round);
  uint64_t since_restart = 0;
  for (;;) {
    int conflict = propagate();
    if (conflict >= 0) {
      ++conflicts_;
      ++since_restart;
      if (trail_lim_.empty()) {
        unsat_ = true;
        return false;
      }
      int level = 0;
      analyze(conflict, learnt, level);
      backtrack(level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        int id = attach(learnt);
        enqueue(learnt[0], id);
      }
      continue;
    }
    if (since_restart >= budget) {
      backtrack(0);
      since_restart = 0;
      budget = 100 * luby(++restart_round);
      continue;
    }
    int v = pick_branch();
    if (v < 0) {
      model_.assign(assign_.size(), false);
      for (size_t i = 0; i < assign_.size(); ++i) model_[i] = assign_[i] == kTrue;
      return true;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(mk_lit(v, phase_[v]), -1);
  }
}

}  // namespace smk
