#include "smk/sm_sentence.hpp"

namespace smk {

namespace {

std::vector<Term> variable_tuple(int arity) {
  std::vector<Term> out;
  for (int i = 1; i <= arity; ++i) out.push_back(Term::var("x" + std::to_string(i)));
  return out;
}

std::vector<std::string> variable_names(int arity) {
  std::vector<std::string> out;
  for (int i = 1; i <= arity; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

Formula build_sm_sentence(const Program& p) {
  const auto& tau = p.intensional();
  FreshNames fresh;
  fresh.reserve(p.vocabulary());
  std::map<std::string, std::string> star;
  for (const auto& name : tau) star[name] = fresh.symbol(name + "_star");

  auto starred = [&](Atom a) {
    if (!a.is_equality() && star.count(a.predicate)) a.predicate = star.at(a.predicate);
    return a;
  };

  std::vector<Formula> phi, phi_star;
  for (const auto& rule : p.rules()) {
    phi.push_back(universal_closure(rule_formula(rule)));
    Rule r = rule;
    for (auto& h : r.head) h = starred(h);
    for (auto& l : r.body) {
      if (l.positive) l.atom = starred(l.atom);
    }
    phi_star.push_back(universal_closure(rule_formula(r)));
  }

  std::vector<Formula> below, above;
  for (const auto& name : tau) {
    int k = p.vocabulary().predicate_arity(name);
    Formula orig = Formula::atom(Atom::pred(name, variable_tuple(k)));
    Formula copy = Formula::atom(Atom::pred(star.at(name), variable_tuple(k)));
    below.push_back(Formula::forall(variable_names(k), Formula::implies(copy, orig)));
    above.push_back(Formula::forall(variable_names(k), Formula::implies(orig, copy)));
  }
  Formula smaller = Formula::conj({Formula::conj(below), Formula::negation(Formula::conj(above))});
  Formula minimality = Formula::implies(smaller, Formula::negation(Formula::conj(phi_star)));
  for (auto it = tau.rbegin(); it != tau.rend(); ++it) {
    minimality = Formula::so_forall(SoSymbol{star.at(*it), p.vocabulary().predicate_arity(*it), false}, minimality);
  }
  return Formula::conj({Formula::conj(phi), minimality});
}

}  // namespace smk
