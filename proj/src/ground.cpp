#include "smk/ground.hpp"

#include <algorithm>
#include <set>

namespace smk {

int AtomTable::intern(const GroundAtom& a) {
  auto [it, inserted] = ids_.emplace(a, static_cast<int>(atoms_.size()));
  if (inserted) atoms_.push_back(a);
  return it->second;
}

int AtomTable::find(const GroundAtom& a) const {
  auto it = ids_.find(a);
  return it == ids_.end() ? -1 : it->second;
}

int eval_term(const Term& t, const FiniteStructure& s, const std::map<std::string, int>& vars) {
  if (t.is_var()) {
    auto it = vars.find(t.name);
    if (it == vars.end()) throw PreconditionError("unbound variable '" + t.name + "'");
    return it->second;
  }
  Tuple args;
  for (const auto& a : t.args) args.push_back(eval_term(a, s, vars));
  return s.value(t.name, args);
}

namespace {

struct GTerm {
  int var = -1;
  const std::vector<int>* table = nullptr;
  std::vector<GTerm> args;
};

struct GLiteral {
  bool equality = false;
  bool positive = true;
  std::string predicate;
  const std::vector<char>* table = nullptr;  // evaluated predicates
  std::vector<GTerm> args;
  int depth = -1;  // index of the last variable it mentions
};

class RuleGrounder {
 public:
  RuleGrounder(const Rule& r, const FiniteStructure& s, const std::set<std::string>& symbolic, bool keep_negative,
               AtomTable& atoms)
      : s_(s), atoms_(atoms), n_(s.size()) {
    vars_ = variables_of(r);
    for (size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = static_cast<int>(i);
    values_.assign(vars_.size(), 0);
    for (const auto& h : r.head) {
      if (!symbolic.count(h.predicate)) throw PreconditionError("head predicate '" + h.predicate + "' is not symbolic");
      head_.push_back(compile(h, true));
    }
    for (const auto& l : r.body) {
      GLiteral g = compile(l.atom, l.positive);
      bool sym = !l.atom.is_equality() && symbolic.count(l.atom.predicate) && (l.positive || keep_negative);
      if (sym) {
        (l.positive ? pos_ : neg_).push_back(std::move(g));
      } else {
        if (!l.atom.is_equality()) {
          if (!s.vocabulary().has_predicate(l.atom.predicate)) {
            throw SyntaxError("structure does not interpret predicate '" + l.atom.predicate + "'");
          }
          if (s.vocabulary().predicate_arity(l.atom.predicate) != static_cast<int>(l.atom.args.size())) {
            throw SyntaxError("arity mismatch for predicate '" + l.atom.predicate + "'");
          }
          g.table = &s.relation_table(l.atom.predicate);
        }
        checks_.push_back(std::move(g));
      }
    }
    std::sort(checks_.begin(), checks_.end(), [](const GLiteral& a, const GLiteral& b) { return a.depth < b.depth; });
  }

  size_t variable_count() const { return vars_.size(); }

  void run(const std::function<void(GroundRule)>& emit) {
    emit_ = &emit;
    next_check_ = 0;
    if (!checks_pass(-1)) return;
    descend(0);
  }

 private:
  GTerm compile_term(const Term& t, int& depth) {
    GTerm g;
    if (t.is_var()) {
      g.var = index_.at(t.name);
      depth = std::max(depth, g.var);
      return g;
    }
    if (!s_.vocabulary().has_function(t.name)) throw SyntaxError("structure does not interpret function '" + t.name + "'");
    if (s_.vocabulary().function_arity(t.name) != static_cast<int>(t.args.size())) {
      throw SyntaxError("arity mismatch for function '" + t.name + "'");
    }
    g.table = &s_.function_table(t.name);
    for (const auto& a : t.args) g.args.push_back(compile_term(a, depth));
    return g;
  }

  GLiteral compile(const Atom& a, bool positive) {
    GLiteral g;
    g.equality = a.is_equality();
    g.positive = positive;
    g.predicate = a.predicate;
    for (const auto& t : a.args) g.args.push_back(compile_term(t, g.depth));
    return g;
  }

  int value(const GTerm& t) const {
    if (t.var >= 0) return values_[t.var];
    size_t idx = 0;
    for (const auto& a : t.args) idx = idx * n_ + static_cast<size_t>(value(a));
    return (*t.table)[idx];
  }

  bool holds(const GLiteral& l) const {
    bool v;
    if (l.equality) {
      v = value(l.args[0]) == value(l.args[1]);
    } else {
      size_t idx = 0;
      for (const auto& a : l.args) idx = idx * n_ + static_cast<size_t>(value(a));
      v = (*l.table)[idx] != 0;
    }
    return v == l.positive;
  }

  // Checks every evaluated literal whose last variable is `depth`.
  bool checks_pass(int depth) const {
    auto lo = std::lower_bound(checks_.begin(), checks_.end(), depth,
                               [](const GLiteral& l, int d) { return l.depth < d; });
    for (auto it = lo; it != checks_.end() && it->depth == depth; ++it) {
      if (!holds(*it)) return false;
    }
    return true;
  }

  int atom_id(const GLiteral& l) {
    GroundAtom a{l.predicate, {}};
    for (const auto& t : l.args) a.args.push_back(value(t));
    return atoms_.intern(a);
  }

  void descend(size_t d) {
    if (d == vars_.size()) {
      GroundRule g;
      for (const auto& h : head_) g.head.push_back(atom_id(h));
      for (const auto& l : pos_) g.pos.push_back(atom_id(l));
      for (const auto& l : neg_) g.neg.push_back(atom_id(l));
      (*emit_)(std::move(g));
      return;
    }
    for (size_t e = 0; e < n_; ++e) {
      values_[d] = static_cast<int>(e);
      if (checks_pass(static_cast<int>(d))) descend(d + 1);
    }
  }

  const FiniteStructure& s_;
  AtomTable& atoms_;
  size_t n_;
  std::vector<std::string> vars_;
  std::map<std::string, int> index_;
  std::vector<int> values_;
  std::vector<GLiteral> head_, pos_, neg_, checks_;
  const std::function<void(GroundRule)>* emit_ = nullptr;
  size_t next_check_ = 0;
};

void normalize(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<GroundRule> ground(const Program& p, const FiniteStructure& s, const std::set<std::string>& symbolic,
                               bool keep_negative_symbolic, AtomTable& atoms, const GroundOptions& options) {
  std::vector<GroundRule> out;
  std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>> seen;
  for (const auto& r : p.rules()) {
    RuleGrounder g(r, s, symbolic, keep_negative_symbolic, atoms);
    if (tuple_count(s.size(), static_cast<int>(g.variable_count())) > options.instance_cap) {
      throw ResourceLimit("rule '" + to_string(r) + "' has too many ground instances");
    }
    g.run([&](GroundRule gr) {
      normalize(gr.head);
      normalize(gr.pos);
      normalize(gr.neg);
      if (seen.emplace(gr.head, gr.pos, gr.neg).second) out.push_back(std::move(gr));
    });
  }
  return out;
}

}  // namespace smk
