#include "oracles.hpp"

#include <functional>
#include <optional>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

using namespace smk;

namespace {

using Args = std::vector<int>;

struct Env {
  const FiniteStructure& s;
  std::map<std::string, int> fo;
  std::map<std::string, std::set<Args>> rel;
  std::map<std::string, std::map<Args, int>> fun;
};

std::vector<Args> all_args(int n, int k) {
  std::vector<Args> out{Args{}};
  for (int i = 0; i < k; ++i) {
    std::vector<Args> next;
    for (const auto& a : out) {
      for (int e = 0; e < n; ++e) {
        Args b = a;
        b.push_back(e);
        next.push_back(b);
      }
    }
    out = next;
  }
  return out;
}

int term(const Env& env, const Term& t) {
  if (t.is_var()) return env.fo.at(t.name);
  Args args;
  for (const auto& a : t.args) args.push_back(term(env, a));
  auto it = env.fun.find(t.name);
  if (it != env.fun.end()) return it->second.at(args);
  return env.s.value(t.name, args);
}

bool holds(const Env& env, const Atom& a) {
  Args args;
  for (const auto& t : a.args) args.push_back(term(env, t));
  if (a.is_equality()) return args[0] == args[1];
  auto it = env.rel.find(a.predicate);
  if (it != env.rel.end()) return it->second.count(args) != 0;
  return env.s.holds(a.predicate, args);
}

bool eval_rec(Env& env, const Formula& f) {
  int n = static_cast<int>(env.s.size());
  switch (f.kind()) {
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::Atom:
      return holds(env, f.atom());
    case FormulaKind::Not:
      return !eval_rec(env, f.child());
    case FormulaKind::And:
      for (const auto& c : f.children()) {
        if (!eval_rec(env, c)) return false;
      }
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children()) {
        if (eval_rec(env, c)) return true;
      }
      return false;
    case FormulaKind::Implies:
      return !eval_rec(env, f.child(0)) || eval_rec(env, f.child(1));
    case FormulaKind::Iff:
      return eval_rec(env, f.child(0)) == eval_rec(env, f.child(1));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool universal = f.kind() == FormulaKind::Forall;
      auto saved = env.fo.find(f.variable()) != env.fo.end() ? std::optional<int>(env.fo[f.variable()]) : std::nullopt;
      bool result = universal;
      for (int e = 0; e < n; ++e) {
        env.fo[f.variable()] = e;
        if (eval_rec(env, f.child()) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) {
        env.fo[f.variable()] = *saved;
      } else {
        env.fo.erase(f.variable());
      }
      return result;
    }
    case FormulaKind::SoForall:
    case FormulaKind::SoExists: {
      bool universal = f.kind() == FormulaKind::SoForall;
      const SoSymbol& sym = f.symbol();
      auto tuples = all_args(n, sym.arity);
      bool result = universal;
      if (sym.is_function) {
        auto saved = env.fun[sym.name];
        std::vector<int> digits(tuples.size(), 0);
        while (true) {
          std::map<Args, int> table;
          for (size_t i = 0; i < tuples.size(); ++i) table[tuples[i]] = digits[i];
          env.fun[sym.name] = table;
          if (eval_rec(env, f.child()) != universal) {
            result = !universal;
            break;
          }
          size_t i = 0;
          while (i < digits.size() && ++digits[i] == n) digits[i++] = 0;
          if (i == digits.size()) break;
        }
        env.fun[sym.name] = saved;
        if (saved.empty()) env.fun.erase(sym.name);
      } else {
        if (tuples.size() > 24) throw std::runtime_error("oracle: relation too large");
        bool had = env.rel.count(sym.name) != 0;
        auto saved = env.rel[sym.name];
        for (uint64_t mask = 0; mask < (uint64_t(1) << tuples.size()); ++mask) {
          std::set<Args> r;
          for (size_t i = 0; i < tuples.size(); ++i) {
            if (mask >> i & 1) r.insert(tuples[i]);
          }
          env.rel[sym.name] = r;
          if (eval_rec(env, f.child()) != universal) {
            result = !universal;
            break;
          }
        }
        if (had) {
          env.rel[sym.name] = saved;
        } else {
          env.rel.erase(sym.name);
        }
      }
      return result;
    }
  }
  return false;
}

struct Instance {
  std::vector<GroundAtom> head;
  std::vector<GroundAtom> body;  // positive intensional atoms kept by the reduct
};

}  // namespace

bool eval(const FiniteStructure& s, const Formula& f) {
  Env env{s, {}, {}, {}};
  return eval_rec(env, f);
}

bool is_stable(const Program& p, const FiniteStructure& s) {
  const auto& intensional = p.intensional();
  int n = static_cast<int>(s.size());
  std::vector<Instance> reduct;
  for (const auto& r : p.rules()) {
    auto vs = variables_of(r);
    for (const auto& values : all_args(n, static_cast<int>(vs.size()))) {
      Env env{s, {}, {}, {}};
      for (size_t i = 0; i < vs.size(); ++i) env.fo[vs[i]] = values[i];
      Instance inst;
      bool keep = true;
      for (const auto& l : r.body) {
        bool kept = l.positive && !l.atom.is_equality() && intensional.count(l.atom.predicate);
        if (kept) {
          Args args;
          for (const auto& t : l.atom.args) args.push_back(term(env, t));
          inst.body.push_back({l.atom.predicate, args});
        } else if (holds(env, l.atom) != l.positive) {
          keep = false;
          break;
        }
      }
      if (!keep) continue;
      for (const auto& h : r.head) {
        Args args;
        for (const auto& t : h.args) args.push_back(term(env, t));
        inst.head.push_back({h.predicate, args});
      }
      reduct.push_back(inst);
    }
  }
  std::vector<GroundAtom> m;
  for (const auto& q : intensional) {
    for (const auto& t : s.tuples(q)) m.push_back({q, t});
  }
  auto satisfies = [&](const std::set<GroundAtom>& model) {
    for (const auto& inst : reduct) {
      bool body = true;
      for (const auto& a : inst.body) body = body && model.count(a);
      if (!body) continue;
      bool head = false;
      for (const auto& a : inst.head) head = head || model.count(a);
      if (!head) return false;
    }
    return true;
  };
  if (!satisfies(std::set<GroundAtom>(m.begin(), m.end()))) return false;
  if (m.size() > 20) throw std::runtime_error("oracle: too many true intensional atoms");
  uint64_t full = (uint64_t(1) << m.size()) - 1;
  for (uint64_t mask = 0; mask < full; ++mask) {
    std::set<GroundAtom> sub;
    for (size_t i = 0; i < m.size(); ++i) {
      if (mask >> i & 1) sub.insert(m[i]);
    }
    if (satisfies(sub)) return false;
  }
  return true;
}

std::vector<FiniteStructure> stable_expansions(const Program& p, const FiniteStructure& s, const Vocabulary& extra) {
  std::vector<FiniteStructure> out;
  for (auto& e : expansions(s, extra)) {
    if (is_stable(p, e)) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace oracle
