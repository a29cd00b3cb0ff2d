#include "smk/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace smk {

Term Term::var(std::string name) { return Term{Kind::Variable, std::move(name), {}}; }

Term Term::apply(std::string name, std::vector<Term> args) {
  return Term{Kind::Apply, std::move(name), std::move(args)};
}

Atom Atom::pred(std::string name, std::vector<Term> args) {
  return Atom{Kind::Predicate, std::move(name), std::move(args)};
}

Atom Atom::eq(Term lhs, Term rhs) {
  std::vector<Term> args;
  args.push_back(std::move(lhs));
  args.push_back(std::move(rhs));
  return Atom{Kind::Equality, "", std::move(args)};
}

// ---------------------------------------------------------------------------
// Vocabulary

void Vocabulary::add_predicate(const std::string& name, int arity) {
  if (arity < 0) throw SyntaxError("negative arity for predicate '" + name + "'");
  if (functions_.count(name)) throw SyntaxError("'" + name + "' used both as function and predicate");
  auto [it, inserted] = predicates_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw SyntaxError("arity mismatch for predicate '" + name + "': " + std::to_string(it->second) +
                      " vs " + std::to_string(arity));
  }
}

void Vocabulary::add_function(const std::string& name, int arity) {
  if (arity < 0) throw SyntaxError("negative arity for function '" + name + "'");
  if (predicates_.count(name)) throw SyntaxError("'" + name + "' used both as predicate and function");
  auto [it, inserted] = functions_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw SyntaxError("arity mismatch for function '" + name + "': " + std::to_string(it->second) +
                      " vs " + std::to_string(arity));
  }
}

void Vocabulary::merge(const Vocabulary& other) {
  for (const auto& [n, a] : other.predicates_) add_predicate(n, a);
  for (const auto& [n, a] : other.functions_) add_function(n, a);
}

int Vocabulary::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw SyntaxError("unknown predicate '" + name + "'");
  return it->second;
}

int Vocabulary::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw SyntaxError("unknown function '" + name + "'");
  return it->second;
}

std::set<std::string> Vocabulary::names() const {
  std::set<std::string> out;
  for (const auto& [n, a] : predicates_) out.insert(n);
  for (const auto& [n, a] : functions_) out.insert(n);
  return out;
}

// ---------------------------------------------------------------------------
// Program

namespace {

void register_term(Vocabulary& v, const Term& t) {
  if (t.is_var()) return;
  v.add_function(t.name, static_cast<int>(t.args.size()));
  for (const auto& a : t.args) register_term(v, a);
}

void register_atom(Vocabulary& v, const Atom& a) {
  if (!a.is_equality()) v.add_predicate(a.predicate, static_cast<int>(a.args.size()));
  for (const auto& t : a.args) register_term(v, t);
}

}  // namespace

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    for (const auto& h : r.head) {
      if (h.is_equality()) throw SyntaxError("equality atom in rule head: " + to_string(r));
      register_atom(vocabulary_, h);
      intensional_.insert(h.predicate);
    }
    for (const auto& l : r.body) register_atom(vocabulary_, l.atom);
  }
}

bool Program::is_normal() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.head.size() <= 1; });
}

int Program::max_intensional_arity() const {
  int n = 0;
  for (const auto& p : intensional_) n = std::max(n, vocabulary_.predicate_arity(p));
  return n;
}

Program operator+(const Program& a, const Program& b) {
  std::vector<Rule> rules = a.rules();
  rules.insert(rules.end(), b.rules().begin(), b.rules().end());
  return Program(std::move(rules));
}

// ---------------------------------------------------------------------------
// Variables and substitution

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

void collect_variables(const Atom& a, std::vector<std::string>& out) {
  for (const auto& t : a.args) collect_variables(t, out);
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::vector<std::string> variables_of(const Atom& a) {
  std::vector<std::string> out;
  collect_variables(a, out);
  return out;
}

std::vector<std::string> variables_of(const Rule& r) {
  std::vector<std::string> out;
  for (const auto& l : r.body) collect_variables(l.atom, out);
  for (const auto& h : r.head) collect_variables(h, out);
  return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_var()) {
    auto it = sigma.find(t.name);
    return it == sigma.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute(a, sigma);
  return out;
}

Atom substitute(const Atom& a, const std::map<std::string, Term>& sigma) {
  Atom out = a;
  for (auto& t : out.args) t = substitute(t, sigma);
  return out;
}

Rule substitute(const Rule& r, const std::map<std::string, Term>& sigma) {
  Rule out;
  for (const auto& h : r.head) out.head.push_back(substitute(h, sigma));
  for (const auto& l : r.body) out.body.push_back({substitute(l.atom, sigma), l.positive});
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) {
  if (t.is_var() || t.args.empty()) return t.name;
  std::string s = t.name + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(t.args[i]);
  }
  return s + ")";
}

std::string to_string(const Atom& a) {
  if (a.is_equality()) return to_string(a.args[0]) + " = " + to_string(a.args[1]);
  if (a.args.empty()) return a.predicate;
  std::string s = a.predicate + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

std::string to_string(const Literal& l) {
  if (l.positive) return to_string(l.atom);
  if (l.atom.is_equality()) return to_string(l.atom.args[0]) + " != " + to_string(l.atom.args[1]);
  return "not " + to_string(l.atom);
}

std::string to_string(const Rule& r) {
  std::string s;
  for (size_t i = 0; i < r.head.size(); ++i) {
    if (i) s += " | ";
    s += to_string(r.head[i]);
  }
  if (!r.body.empty()) {
    s += r.head.empty() ? ":- " : " :- ";
    for (size_t i = 0; i < r.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(r.body[i]);
    }
  } else if (r.head.empty()) {
    s += ":-";
  }
  return s + ".";
}

std::string to_string(const Program& p) {
  std::string s;
  for (const auto& r : p.rules()) s += to_string(r) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Fresh names

void FreshNames::reserve(const Vocabulary& v) {
  for (const auto& n : v.names()) taken_.insert(n);
}

std::string FreshNames::symbol(const std::string& base) {
  std::string name = base;
  for (int k = 1; taken_.count(name); ++k) name = base + "_" + std::to_string(k);
  taken_.insert(name);
  return name;
}

std::string FreshNames::variable() {
  std::string name;
  do {
    name = "_v" + std::to_string(++counter_);
  } while (taken_.count(name));
  taken_.insert(name);
  return name;
}

}  // namespace smk
