#include "smk/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace smk {

Formula::Formula() : Formula(Node{}) {}

Formula Formula::top() { return Formula(Node{FormulaKind::True, {}, {}, {}, {}}); }
Formula Formula::bottom() { return Formula(Node{FormulaKind::False, {}, {}, {}, {}}); }

Formula Formula::atom(Atom a) { return Formula(Node{FormulaKind::Atom, std::move(a), {}, {}, {}}); }

Formula Formula::literal(const Literal& l) {
  Formula a = atom(l.atom);
  return l.positive ? a : negation(a);
}

Formula Formula::negation(Formula f) {
  return Formula(Node{FormulaKind::Not, {}, {std::move(f)}, {}, {}});
}

Formula Formula::nary(FormulaKind k, std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.kind() == k) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return k == FormulaKind::And ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return Formula(Node{k, {}, std::move(flat), {}, {}});
}

Formula Formula::conj(std::vector<Formula> fs) { return nary(FormulaKind::And, std::move(fs)); }
Formula Formula::disj(std::vector<Formula> fs) { return nary(FormulaKind::Or, std::move(fs)); }

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(Node{FormulaKind::Implies, {}, {std::move(lhs), std::move(rhs)}, {}, {}});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return Formula(Node{FormulaKind::Iff, {}, {std::move(lhs), std::move(rhs)}, {}, {}});
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(Node{FormulaKind::Forall, {}, {std::move(body)}, std::move(var), {}});
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(Node{FormulaKind::Exists, {}, {std::move(body)}, std::move(var), {}});
}

Formula Formula::forall(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::exists(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

Formula Formula::so_forall(SoSymbol s, Formula body) {
  return Formula(Node{FormulaKind::SoForall, {}, {std::move(body)}, {}, std::move(s)});
}

Formula Formula::so_exists(SoSymbol s, Formula body) {
  return Formula(Node{FormulaKind::SoExists, {}, {std::move(body)}, {}, std::move(s)});
}

bool Formula::is_quantifier() const {
  return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists || is_so_quantifier();
}

bool Formula::is_so_quantifier() const {
  return kind() == FormulaKind::SoForall || kind() == FormulaKind::SoExists;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.atom == b.atom && a.variable == b.variable && a.symbol == b.symbol &&
         a.children == b.children;
}

// ---------------------------------------------------------------------------

namespace {

void term_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  out.insert(t.name);
  for (const auto& a : t.args) term_symbols(a, out);
}

}  // namespace

Rule formula_variables(const Rule& r) {
  std::set<std::string> symbols{"v"};
  for (const auto& h : r.head) {
    symbols.insert(h.predicate);
    for (const auto& t : h.args) term_symbols(t, symbols);
  }
  for (const auto& l : r.body) {
    if (!l.atom.is_equality()) symbols.insert(l.atom.predicate);
    for (const auto& t : l.atom.args) term_symbols(t, symbols);
  }
  std::map<std::string, Term> sigma;
  std::set<std::string> used;
  for (const auto& v : variables_of(r)) {
    std::string name = v;
    if (!name.empty() && name[0] != '_') {
      name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
      while (symbols.count(name) || used.count(name)) name += "_";
    }
    used.insert(name);
    if (name != v) sigma.emplace(v, Term::var(name));
  }
  return sigma.empty() ? r : substitute(r, sigma);
}

Formula rule_formula(const Rule& rule) {
  Rule r = formula_variables(rule);
  std::vector<Formula> body;
  for (const auto& l : r.body) body.push_back(Formula::literal(l));
  std::vector<Formula> head;
  for (const auto& h : r.head) head.push_back(Formula::atom(h));
  Formula hd = Formula::disj(std::move(head));
  if (body.empty()) return hd;
  return Formula::implies(Formula::conj(std::move(body)), hd);
}

namespace {

void free_vars_rec(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Atom: {
      std::vector<std::string> vs = variables_of(f.atom());
      for (const auto& v : vs) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end()) {
          out.push_back(v);
        }
      }
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      bound.push_back(f.variable());
      free_vars_rec(f.child(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children()) free_vars_rec(c, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

Formula universal_closure(const Formula& f) { return Formula::forall(free_variables(f), f); }

namespace {

void vocab_term(const Term& t, const std::set<std::string>& bound, Vocabulary& v) {
  if (t.is_var()) return;
  if (!bound.count(t.name)) v.add_function(t.name, static_cast<int>(t.args.size()));
  for (const auto& a : t.args) vocab_term(a, bound, v);
}

void vocab_rec(const Formula& f, std::multiset<std::string>& bound, Vocabulary& v) {
  std::set<std::string> b(bound.begin(), bound.end());
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!f.atom().is_equality() && !b.count(f.atom().predicate)) {
        v.add_predicate(f.atom().predicate, static_cast<int>(f.atom().args.size()));
      }
      for (const auto& t : f.atom().args) vocab_term(t, b, v);
      return;
    case FormulaKind::SoForall:
    case FormulaKind::SoExists: {
      auto it = bound.insert(f.symbol().name);
      vocab_rec(f.child(), bound, v);
      bound.erase(it);
      return;
    }
    default:
      for (const auto& c : f.children()) vocab_rec(c, bound, v);
  }
}

}  // namespace

Vocabulary vocabulary_of(const Formula& f) {
  std::multiset<std::string> bound;
  Vocabulary v;
  vocab_rec(f, bound, v);
  return v;
}

size_t formula_size(const Formula& f) {
  size_t n = 1;
  for (const auto& c : f.children()) n += formula_size(c);
  return n;
}

// ---------------------------------------------------------------------------
// Prefix classes

namespace {

bool contains_quantifier(const Formula& f) {
  if (f.is_quantifier()) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_quantifier);
}

bool contains_so_quantifier(const Formula& f) {
  if (f.is_so_quantifier()) return true;
  return std::any_of(f.children().begin(), f.children().end(), contains_so_quantifier);
}

}  // namespace

PrefixClass classify_prefix(const Formula& f) {
  PrefixClass pc;
  const Formula* cur = &f;
  while (cur->is_so_quantifier()) {
    bool ex = cur->kind() == FormulaKind::SoExists;
    if (pc.so_block_existential.empty() || pc.so_block_existential.back() != ex) {
      pc.so_block_existential.push_back(ex);
    }
    pc.so_max_arity = std::max(pc.so_max_arity, cur->symbol().arity);
    pc.so_has_function = pc.so_has_function || cur->symbol().is_function;
    (ex ? pc.so_existential_count : pc.so_universal_count)++;
    cur = &cur->child();
  }
  pc.second_order_prefix_ok = !contains_so_quantifier(*cur);
  while (cur->kind() == FormulaKind::Forall) {
    pc.fo_universal_count++;
    cur = &cur->child();
  }
  const Formula* after_forall = cur;
  while (cur->kind() == FormulaKind::Exists) {
    pc.fo_existential_count++;
    cur = &cur->child();
  }
  bool qf = !contains_quantifier(*cur);
  pc.fo_forall_exists = qf;
  pc.fo_forall_only = qf && after_forall == cur;
  return pc;
}

bool PrefixClass::in_sigma1_forall(int k) const {
  if (!second_order_prefix_ok || !fo_forall_only || so_has_function) return false;
  if (so_block_existential.size() > 1) return false;
  if (so_block_existential.size() == 1 && !so_block_existential[0]) return false;
  return so_max_arity <= k;
}

bool PrefixClass::in_sigma2_forall_exists() const {
  if (!second_order_prefix_ok || !fo_forall_exists || so_has_function) return false;
  if (so_block_existential.size() > 2) return false;
  if (so_block_existential.size() == 2) return so_block_existential[0];
  return true;
}

bool PrefixClass::in_sigma2n(int n) const {
  return in_sigma2_forall_exists() && so_max_arity <= n && fo_universal_count <= n;
}

int PrefixClass::sigma2_n() const {
  if (!in_sigma2_forall_exists()) return -1;
  return std::max(so_max_arity, fo_universal_count);
}

// ---------------------------------------------------------------------------
// Renaming and substitution

namespace {

Formula rename_rec(const Formula& f, const std::map<std::string, std::string>& ren, bool only_positive,
                   bool positive, bool mixed) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom: {
      if (f.atom().is_equality()) return f;
      auto it = ren.find(f.atom().predicate);
      if (it == ren.end()) return f;
      if (only_positive && (!positive || mixed)) return f;
      Atom a = f.atom();
      a.predicate = it->second;
      return Formula::atom(std::move(a));
    }
    case FormulaKind::Not:
      return Formula::negation(rename_rec(f.child(), ren, only_positive, !positive, mixed));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(rename_rec(c, ren, only_positive, positive, mixed));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case FormulaKind::Implies:
      return Formula::implies(rename_rec(f.child(0), ren, only_positive, !positive, mixed),
                              rename_rec(f.child(1), ren, only_positive, positive, mixed));
    case FormulaKind::Iff:
      return Formula::iff(rename_rec(f.child(0), ren, only_positive, positive, true),
                          rename_rec(f.child(1), ren, only_positive, positive, true));
    case FormulaKind::Forall:
      return Formula::forall(f.variable(), rename_rec(f.child(), ren, only_positive, positive, mixed));
    case FormulaKind::Exists:
      return Formula::exists(f.variable(), rename_rec(f.child(), ren, only_positive, positive, mixed));
    case FormulaKind::SoForall:
    case FormulaKind::SoExists: {
      // A bound symbol shadows the renaming below it.
      std::map<std::string, std::string> inner = ren;
      inner.erase(f.symbol().name);
      Formula body = rename_rec(f.child(), inner, only_positive, positive, mixed);
      return f.kind() == FormulaKind::SoForall ? Formula::so_forall(f.symbol(), body)
                                               : Formula::so_exists(f.symbol(), body);
    }
  }
  return f;
}

}  // namespace

Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& renaming,
                          bool only_positive) {
  return rename_rec(f, renaming, only_positive, true, false);
}

Formula substitute_terms(const Formula& f, const std::map<std::string, Term>& sigma) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom:
      return Formula::atom(substitute(f.atom(), sigma));
    case FormulaKind::Not:
      return Formula::negation(substitute_terms(f.child(), sigma));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(substitute_terms(c, sigma));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case FormulaKind::Implies:
      return Formula::implies(substitute_terms(f.child(0), sigma), substitute_terms(f.child(1), sigma));
    case FormulaKind::Iff:
      return Formula::iff(substitute_terms(f.child(0), sigma), substitute_terms(f.child(1), sigma));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::map<std::string, Term> inner = sigma;
      inner.erase(f.variable());
      Formula body = substitute_terms(f.child(), inner);
      return f.kind() == FormulaKind::Forall ? Formula::forall(f.variable(), body)
                                             : Formula::exists(f.variable(), body);
    }
    case FormulaKind::SoForall:
      return Formula::so_forall(f.symbol(), substitute_terms(f.child(), sigma));
    case FormulaKind::SoExists:
      return Formula::so_exists(f.symbol(), substitute_terms(f.child(), sigma));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string print_rec(const Formula& f);

std::string print_operand(const Formula& f) {
  std::string s = print_rec(f);
  return f.is_quantifier() ? "(" + s + ")" : s;
}

std::string print_rec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
      return "TRUE";
    case FormulaKind::False:
      return "FALSE";
    case FormulaKind::Atom:
      return to_string(f.atom());
    case FormulaKind::Not: {
      const Formula& c = f.child();
      if (c.kind() == FormulaKind::Atom && c.atom().is_equality()) {
        return to_string(c.atom().args[0]) + " != " + to_string(c.atom().args[1]);
      }
      if (c.kind() == FormulaKind::Atom || c.kind() == FormulaKind::True || c.kind() == FormulaKind::False) {
        return "~" + print_rec(c);
      }
      std::string s = print_rec(c);
      return c.is_quantifier() || c.kind() == FormulaKind::Not ? "~(" + s + ")" : "~" + s;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::string op = f.kind() == FormulaKind::And ? " & " : " v ";
      std::string s = "(";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) s += op;
        s += print_operand(f.children()[i]);
      }
      return s + ")";
    }
    case FormulaKind::Implies:
      return "(" + print_operand(f.child(0)) + " -> " + print_operand(f.child(1)) + ")";
    case FormulaKind::Iff:
      return "(" + print_operand(f.child(0)) + " <-> " + print_operand(f.child(1)) + ")";
    case FormulaKind::Forall:
      return "ALL " + f.variable() + " . " + print_rec(f.child());
    case FormulaKind::Exists:
      return "SOME " + f.variable() + " . " + print_rec(f.child());
    case FormulaKind::SoForall:
    case FormulaKind::SoExists: {
      std::string q = f.kind() == FormulaKind::SoForall ? "ALL " : "EX ";
      if (f.symbol().is_function) q += "FUN ";
      return q + f.symbol().name + "/" + std::to_string(f.symbol().arity) + " . " + print_rec(f.child());
    }
  }
  return "";
}

}  // namespace

std::string to_string(const Formula& f) { return print_rec(f); }

}  // namespace smk
