#include "smk/semantics.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "smk/sat.hpp"

namespace smk {

PropositionalProgram reduct(const Program& p, const FiniteStructure& s) {
  PropositionalProgram pp;
  for (auto& g : ground(p, s, p.intensional(), false, pp.atoms)) {
    pp.rules.push_back({std::move(g.pos), std::move(g.head)});
  }
  return pp;
}

namespace {

std::vector<char> membership(const PropositionalProgram& pp, const AtomSet& m) {
  std::vector<char> in(pp.atoms.size(), 0);
  for (size_t i = 0; i < pp.atoms.size(); ++i) in[i] = m.count(pp.atoms.atom(static_cast<int>(i))) ? 1 : 0;
  return in;
}

bool satisfies(const PropositionalProgram& pp, const std::vector<char>& in) {
  for (const auto& r : pp.rules) {
    bool body = std::all_of(r.body.begin(), r.body.end(), [&](int a) { return in[a] != 0; });
    if (!body) continue;
    if (std::none_of(r.head.begin(), r.head.end(), [&](int a) { return in[a] != 0; })) return false;
  }
  return true;
}

bool all_normal(const PropositionalProgram& pp) {
  return std::all_of(pp.rules.begin(), pp.rules.end(), [](const PropositionalRule& r) { return r.head.size() <= 1; });
}

// Least model of the rules with one head atom.
std::vector<char> least_model(const PropositionalProgram& pp) {
  std::vector<char> in(pp.atoms.size(), 0);
  std::vector<std::vector<int>> watch(pp.atoms.size());
  std::vector<size_t> missing(pp.rules.size(), 0);
  std::vector<int> queue;
  for (size_t r = 0; r < pp.rules.size(); ++r) {
    const auto& rule = pp.rules[r];
    if (rule.head.size() != 1) continue;
    missing[r] = rule.body.size();
    for (int a : rule.body) watch[a].push_back(static_cast<int>(r));
    if (rule.body.empty() && !in[rule.head[0]]) {
      in[rule.head[0]] = 1;
      queue.push_back(rule.head[0]);
    }
  }
  while (!queue.empty()) {
    int a = queue.back();
    queue.pop_back();
    for (int r : watch[a]) {
      if (--missing[r] == 0) {
        int h = pp.rules[r].head[0];
        if (!in[h]) {
          in[h] = 1;
          queue.push_back(h);
        }
      }
    }
  }
  return in;
}

}  // namespace

bool is_model(const PropositionalProgram& pp, const AtomSet& m) { return satisfies(pp, membership(pp, m)); }

std::vector<AtomSet> minimal_models(const PropositionalProgram& pp, const AtomSet& universe,
                                    const MinimalModelOptions& options) {
  if (universe.size() > options.universe_cap) {
    throw ResourceLimit("universe of " + std::to_string(universe.size()) + " atoms exceeds cap " +
                        std::to_string(options.universe_cap));
  }
  std::vector<GroundAtom> atoms(universe.begin(), universe.end());
  for (size_t i = 0; i < pp.atoms.size(); ++i) {
    if (!universe.count(pp.atoms.atom(static_cast<int>(i)))) {
      throw PreconditionError("atom " + pp.atoms.atom(static_cast<int>(i)).predicate + " outside the universe");
    }
  }
  // Program atom id for each universe position.
  std::vector<int> id(atoms.size());
  for (size_t i = 0; i < atoms.size(); ++i) id[i] = pp.atoms.find(atoms[i]);

  std::vector<uint32_t> found;
  std::vector<AtomSet> out;
  size_t n = atoms.size();
  std::vector<char> in(pp.atoms.size(), 0);
  for (size_t k = 0; k <= n; ++k) {
    // Subsets of size k in lexicographic order of positions.
    std::vector<size_t> pick(k);
    for (size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      uint32_t mask = 0;
      for (size_t i : pick) mask |= uint32_t(1) << i;
      bool superset = std::any_of(found.begin(), found.end(), [&](uint32_t f) { return (f & mask) == f; });
      if (!superset) {
        std::fill(in.begin(), in.end(), 0);
        for (size_t i : pick) {
          if (id[i] >= 0) in[id[i]] = 1;
        }
        if (satisfies(pp, in)) {
          found.push_back(mask);
          AtomSet m;
          for (size_t i : pick) m.insert(atoms[i]);
          out.push_back(std::move(m));
        }
      }
      // Advance the combination.
      size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

bool check_stable(const Program& p, const FiniteStructure& s) {
  PropositionalProgram pp = reduct(p, s);
  AtomSet ins = instances(s, p.intensional());
  for (const auto& a : ins) {
    // A true atom no rule mentions can always be dropped.
    if (pp.atoms.find(a) < 0) return false;
  }
  std::vector<char> in = membership(pp, ins);
  if (!satisfies(pp, in)) return false;
  if (all_normal(pp)) return least_model(pp) == in;

  // Look for a model strictly inside ins.
  SatSolver sat;
  std::vector<int> var(pp.atoms.size(), -1);
  std::vector<Lit> shrink;
  for (size_t a = 0; a < in.size(); ++a) {
    if (!in[a]) continue;
    var[a] = sat.new_var();
    shrink.push_back(mk_lit(var[a], false));
  }
  sat.add_clause(shrink);
  for (const auto& r : pp.rules) {
    if (!std::all_of(r.body.begin(), r.body.end(), [&](int a) { return in[a] != 0; })) continue;
    std::vector<Lit> c;
    for (int a : r.body) c.push_back(mk_lit(var[a], false));
    for (int h : r.head) {
      if (in[h]) c.push_back(mk_lit(var[h]));
    }
    sat.add_clause(c);
  }
  return !sat.solve();
}

namespace {

Clause canonical(std::vector<GroundAtom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

}  // namespace

ClauseSet progression_step(const PropositionalProgram& pp, const ClauseSet& ls, const ProgressionOptions& options) {
  // Residuals C of every clause C v p, keyed by p.
  std::map<GroundAtom, std::set<Clause>> residuals;
  for (const auto& c : ls.clauses) {
    for (size_t i = 0; i < c.size(); ++i) {
      Clause rest;
      for (size_t j = 0; j < c.size(); ++j) {
        if (j != i) rest.push_back(c[j]);
      }
      residuals[c[i]].insert(std::move(rest));
    }
  }
  ClauseSet out;
  auto add = [&](Clause c) {
    if (c.empty()) {
      out.bottom = true;
      return;
    }
    out.clauses.insert(std::move(c));
    if (out.clauses.size() > options.clause_cap) {
      throw ResourceLimit("progression exceeded " + std::to_string(options.clause_cap) + " clauses");
    }
  };
  uint64_t budget = uint64_t(options.clause_cap) * 16;
  for (const auto& r : pp.rules) {
    Clause head;
    for (int h : r.head) head.push_back(pp.atoms.atom(h));
    std::vector<std::vector<const Clause*>> choices;
    bool blocked = false;
    for (int b : r.body) {
      auto it = residuals.find(pp.atoms.atom(b));
      if (it == residuals.end()) {
        blocked = true;
        break;
      }
      std::vector<const Clause*> opts;
      for (const auto& c : it->second) opts.push_back(&c);
      choices.push_back(std::move(opts));
    }
    if (blocked) continue;
    std::vector<size_t> pick(choices.size(), 0);
    for (;;) {
      if (budget-- == 0) throw ResourceLimit("progression step exceeded its combination budget");
      Clause c = head;
      for (size_t i = 0; i < pick.size(); ++i) c.insert(c.end(), choices[i][pick[i]]->begin(), choices[i][pick[i]]->end());
      add(canonical(std::move(c)));
      size_t i = pick.size();
      while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) {
        pick[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return out;
}

std::vector<ClauseSet> progression_trace(const PropositionalProgram& pp, const ProgressionOptions& options) {
  std::vector<ClauseSet> trace{ClauseSet{}};
  for (;;) {
    ClauseSet next = progression_step(pp, trace.back(), options);
    if (next == trace.back()) return trace;
    trace.push_back(std::move(next));
  }
}

ClauseSet progression_fixpoint(const Program& p, const FiniteStructure& s, const ProgressionOptions& options) {
  return progression_trace(reduct(p, s), options).back();
}

bool is_minimal_model(const ClauseSet& cs, const AtomSet& m) {
  if (cs.bottom) return false;
  std::set<GroundAtom> witnessed;
  for (const auto& c : cs.clauses) {
    const GroundAtom* only = nullptr;
    int count = 0;
    for (const auto& a : c) {
      if (m.count(a)) {
        ++count;
        only = &a;
      }
    }
    if (count == 0) return false;
    if (count == 1) witnessed.insert(*only);
  }
  // Clauses are positive, so m is minimal iff no single atom can be dropped.
  return witnessed.size() == m.size();
}

bool check_stable_progression(const Program& p, const FiniteStructure& s) {
  return is_minimal_model(progression_fixpoint(p, s), instances(s, p.intensional()));
}

bool check_stable_progression_units(const Program& p, const FiniteStructure& s) {
  if (!p.is_normal()) throw PreconditionError("program is not normal");
  ClauseSet fix = progression_fixpoint(p, s);
  if (fix.bottom) return false;
  AtomSet units;
  for (const auto& c : fix.clauses) {
    if (c.size() == 1) units.insert(c[0]);
  }
  return units == instances(s, p.intensional());
}

Vocabulary uninterpreted(const Program& p, const FiniteStructure& s) {
  Vocabulary v;
  for (const auto& [name, arity] : p.vocabulary().predicates()) {
    if (!s.interprets(name)) v.add_predicate(name, arity);
  }
  for (const auto& [name, arity] : p.vocabulary().functions()) {
    if (!s.interprets(name)) v.add_function(name, arity);
  }
  return v;
}

namespace {

// Stable models of the ground program of one fixed expansion, found as
// supported models refined by loop nogoods.
class StableSearch {
 public:
  StableSearch(const Program& p, const FiniteStructure& base, const EnumerateOptions& options) : base_(base) {
    rules_ = ground(p, base, p.intensional(), true, atoms_, options.ground);
    for (const auto& name : p.intensional()) {
      if (!base.interprets(name)) {
        open_.emplace(name, p.vocabulary().predicate_arity(name));
        continue;
      }
      int arity = p.vocabulary().predicate_arity(name);
      for (uint64_t i = 0; i < tuple_count(base.size(), arity); ++i) {
        GroundAtom a{name, tuple_at(i, base.size(), arity)};
        fixed_.emplace_back(atoms_.intern(a), base.holds(name, a.args));
      }
    }
    build();
  }

  // Calls emit for every stable model; stops when emit returns false.
  bool run(const std::function<bool(const std::vector<char>&)>& emit) {
    while (sat_.solve()) {
      std::vector<char> m(atoms_.size());
      for (size_t a = 0; a < atoms_.size(); ++a) m[a] = sat_.model_value(static_cast<int>(a)) ? 1 : 0;
      std::vector<char> smaller;
      if (!find_smaller(m, smaller)) {
        if (!emit(m)) return false;
        std::vector<Lit> block;
        for (size_t a = 0; a < atoms_.size(); ++a) {
          if (!is_fixed(a)) block.push_back(mk_lit(static_cast<int>(a), !m[a]));
        }
        if (!sat_.add_clause(block)) break;
        continue;
      }
      add_loop_nogood(m, smaller);
    }
    return true;
  }

  FiniteStructure structure(const std::vector<char>& m) const {
    FiniteStructure out = base_;
    for (const auto& [name, arity] : open_) out.add_relation(name, arity);
    for (size_t a = 0; a < atoms_.size(); ++a) {
      const GroundAtom& g = atoms_.atom(static_cast<int>(a));
      if (m[a] && open_.count(g.predicate)) out.set(g.predicate, g.args);
    }
    return out;
  }

 private:
  bool is_fixed(size_t a) const { return fixed_set_.count(static_cast<int>(a)) != 0; }

  void build() {
    size_t n = atoms_.size();
    for (size_t a = 0; a < n; ++a) sat_.new_var();
    for (const auto& [a, value] : fixed_) {
      fixed_set_.insert(a);
      sat_.add_clause({mk_lit(a, value)});
    }
    std::vector<std::vector<Lit>> support(n);
    for (const auto& r : rules_) {
      int b = sat_.new_var();
      body_.push_back(b);
      std::vector<Lit> back{mk_lit(b)};
      for (int a : r.pos) {
        sat_.add_clause({mk_lit(b, false), mk_lit(a)});
        back.push_back(mk_lit(a, false));
      }
      for (int a : r.neg) {
        sat_.add_clause({mk_lit(b, false), mk_lit(a, false)});
        back.push_back(mk_lit(a));
      }
      sat_.add_clause(back);
      std::vector<Lit> fire{mk_lit(b, false)};
      for (int h : r.head) fire.push_back(mk_lit(h));
      sat_.add_clause(fire);
      if (r.head.size() == 1) {
        support[r.head[0]].push_back(mk_lit(b));
      } else {
        for (int h : r.head) {
          int sv = sat_.new_var();
          sat_.add_clause({mk_lit(sv, false), mk_lit(b)});
          for (int o : r.head) {
            if (o != h) sat_.add_clause({mk_lit(sv, false), mk_lit(o, false)});
          }
          support[h].push_back(mk_lit(sv));
        }
      }
      if (r.head.size() > 1) normal_ = false;
    }
    for (size_t a = 0; a < n; ++a) {
      std::vector<Lit> c{mk_lit(static_cast<int>(a), false)};
      c.insert(c.end(), support[a].begin(), support[a].end());
      sat_.add_clause(c);
    }
    watch_.assign(n, {});
    for (size_t r = 0; r < rules_.size(); ++r) {
      for (int a : rules_[r].pos) watch_[a].push_back(static_cast<int>(r));
    }
  }

  bool applies(const GroundRule& r, const std::vector<char>& m) const {
    return std::none_of(r.neg.begin(), r.neg.end(), [&](int a) { return m[a] != 0; });
  }

  // A model of the reduct by m strictly inside m, if one exists.
  bool find_smaller(const std::vector<char>& m, std::vector<char>& out) {
    if (normal_) {
      out.assign(m.size(), 0);
      std::vector<size_t> missing(rules_.size());
      std::vector<int> queue;
      for (size_t r = 0; r < rules_.size(); ++r) {
        missing[r] = rules_[r].pos.size();
        if (missing[r] == 0 && !rules_[r].head.empty() && applies(rules_[r], m) && !out[rules_[r].head[0]]) {
          out[rules_[r].head[0]] = 1;
          queue.push_back(rules_[r].head[0]);
        }
      }
      while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        for (int r : watch_[a]) {
          if (--missing[r] != 0) continue;
          const auto& rule = rules_[r];
          if (rule.head.empty() || !applies(rule, m)) continue;
          int h = rule.head[0];
          if (!out[h]) {
            out[h] = 1;
            queue.push_back(h);
          }
        }
      }
      return out != m;
    }
    SatSolver inner;
    std::vector<int> var(m.size(), -1);
    std::vector<Lit> shrink;
    for (size_t a = 0; a < m.size(); ++a) {
      if (!m[a]) continue;
      var[a] = inner.new_var();
      shrink.push_back(mk_lit(var[a], false));
    }
    if (shrink.empty()) return false;
    inner.add_clause(shrink);
    for (const auto& r : rules_) {
      if (!applies(r, m)) continue;
      if (!std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return m[a] != 0; })) continue;
      std::vector<Lit> c;
      for (int a : r.pos) c.push_back(mk_lit(var[a], false));
      for (int h : r.head) {
        if (m[h]) c.push_back(mk_lit(var[h]));
      }
      inner.add_clause(c);
    }
    if (!inner.solve()) return false;
    out.assign(m.size(), 0);
    for (size_t a = 0; a < m.size(); ++a) {
      if (var[a] >= 0) out[a] = inner.model_value(var[a]) ? 1 : 0;
    }
    return true;
  }

  // U = m \ smaller is unfounded: some atom of U needs an external support.
  void add_loop_nogood(const std::vector<char>& m, const std::vector<char>& smaller) {
    std::vector<char> u(m.size(), 0);
    for (size_t a = 0; a < m.size(); ++a) u[a] = m[a] && !smaller[a];
    std::vector<Lit> external;
    for (size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = rules_[r];
      if (std::none_of(rule.head.begin(), rule.head.end(), [&](int h) { return u[h] != 0; })) continue;
      if (std::any_of(rule.pos.begin(), rule.pos.end(), [&](int a) { return u[a] != 0; })) continue;
      std::vector<int> outside;
      for (int h : rule.head) {
        if (!u[h]) outside.push_back(h);
      }
      if (outside.empty()) {
        external.push_back(mk_lit(body_[r]));
        continue;
      }
      int e = sat_.new_var();
      sat_.add_clause({mk_lit(e, false), mk_lit(body_[r])});
      for (int h : outside) sat_.add_clause({mk_lit(e, false), mk_lit(h, false)});
      external.push_back(mk_lit(e));
    }
    for (size_t a = 0; a < m.size(); ++a) {
      if (!u[a]) continue;
      std::vector<Lit> c{mk_lit(static_cast<int>(a), false)};
      c.insert(c.end(), external.begin(), external.end());
      sat_.add_clause(c);
    }
  }

  const FiniteStructure& base_;
  AtomTable atoms_;
  std::vector<GroundRule> rules_;
  std::map<std::string, int> open_;
  std::vector<std::pair<int, bool>> fixed_;
  std::set<int> fixed_set_;
  SatSolver sat_;
  std::vector<int> body_;
  std::vector<std::vector<int>> watch_;
  bool normal_ = true;
};

}  // namespace

uint64_t enumerate_stable(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                          const std::function<bool(const FiniteStructure&)>& emit, const EnumerateOptions& options) {
  Vocabulary extra;
  for (const auto& name : aux.names()) {
    if (s.interprets(name)) throw PreconditionError("auxiliary symbol '" + name + "' is interpreted by the structure");
    if (!p.vocabulary().contains(name)) {
      throw PreconditionError("auxiliary symbol '" + name + "' does not occur in the program");
    }
  }
  for (const auto& [name, arity] : aux.predicates()) {
    if (!p.intensional().count(name)) extra.add_predicate(name, arity);
  }
  for (const auto& [name, arity] : aux.functions()) extra.add_function(name, arity);

  ExpansionStream stream(s, extra, std::numeric_limits<uint64_t>::max());
  uint64_t found = 0;
  uint64_t visited = 0;
  while (auto base = stream.next()) {
    if (visited++ == options.expansion_cap) {
      throw EnumerationLimit("stopped after " + std::to_string(options.expansion_cap) + " auxiliary expansions",
                             found);
    }
    StableSearch search(p, *base, options);
    std::vector<std::pair<std::string, FiniteStructure>> batch;
    search.run([&](const std::vector<char>& m) {
      FiniteStructure st = search.structure(m);
      std::string key = to_string(st);
      batch.emplace_back(std::move(key), std::move(st));
      return true;
    });
    std::sort(batch.begin(), batch.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, st] : batch) {
      ++found;
      if (!emit(st)) return found;
    }
  }
  return found;
}

std::vector<FiniteStructure> enumerate_stable(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                                              const EnumerateOptions& options) {
  std::vector<FiniteStructure> out;
  enumerate_stable(
      p, s, aux,
      [&](const FiniteStructure& st) {
        out.push_back(st);
        return true;
      },
      options);
  return out;
}

bool has_stable_expansion(const Program& p, const FiniteStructure& s, const Vocabulary& aux,
                          const EnumerateOptions& options) {
  return enumerate_stable(p, s, aux, [](const FiniteStructure&) { return false; }, options) > 0;
}

std::string to_string(const PropositionalProgram& pp, const FiniteStructure& s) {
  std::string out;
  for (const auto& r : pp.rules) {
    std::string line;
    for (size_t i = 0; i < r.head.size(); ++i) {
      if (i) line += " | ";
      line += to_string(pp.atoms.atom(r.head[i]), s);
    }
    if (!r.body.empty()) {
      line += r.head.empty() ? ":- " : " :- ";
      for (size_t i = 0; i < r.body.size(); ++i) {
        if (i) line += ", ";
        line += to_string(pp.atoms.atom(r.body[i]), s);
      }
    } else if (r.head.empty()) {
      line = "FALSE";
    }
    out += line + ".\n";
  }
  return out;
}

std::string to_string(const Clause& c, const FiniteStructure& s) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c[i], s);
  }
  return out;
}

std::string to_string(const ClauseSet& cs, const FiniteStructure& s) {
  std::string out;
  for (const auto& c : cs.clauses) out += to_string(c, s) + "\n";
  if (cs.bottom) out += "FALSE\n";
  return out;
}

}  // namespace smk
