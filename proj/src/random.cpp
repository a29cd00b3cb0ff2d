#include "smk/random.hpp"

#include <algorithm>

namespace smk {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

Atom random_atom(Rng& rng, const std::pair<std::string, int>& pred, const std::vector<std::string>& vars) {
  std::vector<Term> args;
  for (int i = 0; i < pred.second; ++i) args.push_back(Term::var(pick(rng, vars)));
  return Atom::pred(pred.first, args);
}

}  // namespace

Program random_program(Rng& rng, const RandomProgramOptions& o) {
  std::vector<std::pair<std::string, int>> all = o.intensional;
  all.insert(all.end(), o.extensional.begin(), o.extensional.end());
  while (true) {
    std::vector<Rule> rules;
    int n = uniform(rng, 1, o.max_rules);
    for (int i = 0; i < n; ++i) {
      Rule r;
      int heads = uniform(rng, 0, 3) == 0 ? 0 : uniform(rng, 1, o.max_head);
      for (int h = 0; h < heads; ++h) {
        Atom a = random_atom(rng, pick(rng, o.intensional), o.variables);
        if (std::find(r.head.begin(), r.head.end(), a) == r.head.end()) r.head.push_back(a);
      }
      int body = uniform(rng, heads == 0 ? 1 : 0, o.max_body);
      for (int b = 0; b < body; ++b) {
        if (o.equality && uniform(rng, 0, 7) == 0) {
          Atom eq = Atom::eq(Term::var(pick(rng, o.variables)), Term::var(pick(rng, o.variables)));
          r.body.push_back({eq, coin(rng)});
          continue;
        }
        bool positive = !o.negation || uniform(rng, 0, 2) != 0;
        r.body.push_back({random_atom(rng, pick(rng, all), o.variables), positive});
      }
      rules.push_back(std::move(r));
    }
    bool has_head = std::any_of(rules.begin(), rules.end(), [](const Rule& r) { return !r.head.empty(); });
    if (has_head) return Program(std::move(rules));
  }
}

FiniteStructure random_structure(Rng& rng, const Vocabulary& v, size_t size) {
  std::vector<std::string> names;
  for (size_t i = 1; i <= size; ++i) names.push_back(std::to_string(i));
  FiniteStructure s(names);
  for (const auto& [name, arity] : v.predicates()) {
    s.add_relation(name, arity);
    for (auto& cell : s.relation_table(name)) cell = static_cast<char>(coin(rng));
  }
  for (const auto& [name, arity] : v.functions()) {
    s.add_function(name, arity);
    for (auto& cell : s.function_table(name)) cell = uniform(rng, 0, static_cast<int>(size) - 1);
  }
  return s;
}

namespace {

Formula sentence_rec(Rng& rng, const RandomFormulaOptions& o, int depth, std::vector<std::string>& bound) {
  static const std::vector<std::string> kNames{"x", "y", "z"};
  int choice = depth <= 0 ? 0 : uniform(rng, 0, 4 + o.quantifier_weight);
  if (bound.empty() && choice <= 1) choice = 5;
  if (choice <= 1) {
    if (choice == 1 && uniform(rng, 0, 2) == 0) {
      return Formula::atom(Atom::eq(Term::var(pick(rng, bound)), Term::var(pick(rng, bound))));
    }
    return Formula::atom(random_atom(rng, pick(rng, o.predicates), bound));
  }
  switch (choice) {
    case 2:
      return Formula::negation(sentence_rec(rng, o, depth - 1, bound));
    case 3: {
      Formula a = sentence_rec(rng, o, depth - 1, bound);
      Formula b = sentence_rec(rng, o, depth - 1, bound);
      return coin(rng) ? Formula::conj({a, b}) : Formula::disj({a, b});
    }
    case 4: {
      Formula a = sentence_rec(rng, o, depth - 1, bound);
      Formula b = sentence_rec(rng, o, depth - 1, bound);
      return coin(rng) ? Formula::implies(a, b) : Formula::iff(a, b);
    }
    default: {
      std::string v = pick(rng, kNames);
      bound.push_back(v);
      Formula body = sentence_rec(rng, o, depth - 1, bound);
      bound.pop_back();
      return coin(rng) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
  }
}

}  // namespace

Formula random_sentence(Rng& rng, const RandomFormulaOptions& options) {
  std::vector<std::string> bound;
  return sentence_rec(rng, options, std::max(options.depth, 1), bound);
}

Formula random_normal_form_sentence(Rng& rng, const RandomNormalFormOptions& o) {
  std::vector<SoSymbol> ex, all;
  int n_ex = uniform(rng, 0, o.max_existential_so);
  int n_all = uniform(rng, 0, o.max_universal_so);
  for (int i = 0; i < n_ex; ++i) ex.push_back({"S" + std::to_string(i + 1), uniform(rng, 0, o.max_so_arity), false});
  for (int i = 0; i < n_all; ++i) all.push_back({"T" + std::to_string(i + 1), uniform(rng, 0, o.max_so_arity), false});
  std::vector<std::string> xs, ys;
  int n_univ = uniform(rng, 1, o.max_universal);
  int n_exist = uniform(rng, 0, o.max_existential);
  for (int i = 0; i < n_univ; ++i) xs.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n_exist; ++i) ys.push_back("y" + std::to_string(i + 1));
  std::vector<std::string> vars = xs;
  vars.insert(vars.end(), ys.begin(), ys.end());

  std::vector<std::pair<std::string, int>> preds = o.predicates;
  for (const auto& s : ex) preds.emplace_back(s.name, s.arity);
  for (const auto& s : all) preds.emplace_back(s.name, s.arity);

  auto literal = [&](const std::pair<std::string, int>& pred) {
    Formula a = Formula::atom(random_atom(rng, pred, vars));
    return coin(rng) ? a : Formula::negation(a);
  };
  std::vector<std::vector<Formula>> dnf(static_cast<size_t>(uniform(rng, 1, o.max_disjuncts)));
  for (auto& d : dnf) {
    int k = uniform(rng, 1, o.max_literals);
    for (int i = 0; i < k; ++i) {
      if (uniform(rng, 0, 7) == 0) {
        Formula eq = Formula::atom(Atom::eq(Term::var(pick(rng, vars)), Term::var(pick(rng, vars))));
        d.push_back(coin(rng) ? eq : Formula::negation(eq));
      } else {
        d.push_back(literal(pick(rng, preds)));
      }
    }
  }
  // every second-order symbol occurs somewhere
  auto mentions = [&](auto pred) {
    for (const auto& d : dnf) {
      for (const auto& l : d) {
        const Atom& a = l.kind() == FormulaKind::Not ? l.child().atom() : l.atom();
        if (pred(a)) return true;
      }
    }
    return false;
  };
  for (size_t i = o.predicates.size(); i < preds.size(); ++i) {
    const auto& name = preds[i].first;
    if (!mentions([&](const Atom& a) { return a.predicate == name; })) {
      dnf[static_cast<size_t>(uniform(rng, 0, static_cast<int>(dnf.size()) - 1))].push_back(literal(preds[i]));
    }
  }
  std::vector<Formula> disjuncts;
  for (const auto& d : dnf) disjuncts.push_back(Formula::conj(d));
  Formula f = Formula::disj(disjuncts);
  f = Formula::exists(ys, f);
  f = Formula::forall(xs, f);
  for (auto it = all.rbegin(); it != all.rend(); ++it) f = Formula::so_forall(*it, f);
  for (auto it = ex.rbegin(); it != ex.rend(); ++it) f = Formula::so_exists(*it, f);
  return f;
}

}  // namespace smk
