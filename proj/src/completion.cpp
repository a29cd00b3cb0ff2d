#include "smk/completion.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <sys/wait.h>

#include "smk/semantics.hpp"

namespace smk {

int order_width(size_t tau_size, int n) {
  if (tau_size == 0) return 0;
  int bits = 0;
  while ((size_t(1) << bits) < tau_size) ++bits;
  return n + bits;
}

std::vector<Term> OrderScheme::ord(const Atom& a) const {
  const auto& fs = functions.at(a.predicate);
  std::vector<Term> out;
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) out.push_back(Term::apply(*it, a.args));
  return out;
}

Formula lex_less(const std::string& prec, const std::vector<Term>& s, const std::vector<Term>& t) {
  if (s.size() != t.size()) throw PreconditionError("lex_less: tuples of different length");
  std::vector<Formula> cases;
  for (size_t i = 0; i < s.size(); ++i) {
    std::vector<Formula> c;
    for (size_t j = 0; j < i; ++j) c.push_back(Formula::atom(Atom::eq(s[j], t[j])));
    c.push_back(Formula::atom(Atom::pred(prec, {s[i], t[i]})));
    cases.push_back(Formula::conj(std::move(c)));
  }
  return Formula::disj(std::move(cases));
}

Formula lex_less(const OrderScheme& scheme, const std::vector<Term>& s, const std::vector<Term>& t) {
  return lex_less(scheme.prec, s, t);
}

namespace {

std::string lowered(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<std::string> head_variables(int k, const std::set<std::string>& avoid) {
  std::vector<std::string> out;
  for (int j = 1; j <= k; ++j) {
    std::string name = "x" + std::to_string(j);
    while (avoid.count(name)) name += "_";
    out.push_back(name);
  }
  return out;
}

// One rule brought into the form zeta & theta_1 & ... & theta_m -> P(x̄).
struct NormalRule {
  std::vector<Formula> zeta;
  std::vector<Atom> theta;
  std::vector<std::string> y;
};

NormalRule normalize(const Rule& rule, const std::vector<std::string>& x, const std::set<std::string>& avoid,
                     const std::set<std::string>& intensional) {
  Rule r = formula_variables(rule);
  // Keep rule variables apart from the head variables and the new symbols.
  std::set<std::string> vars;
  for (const auto& v : variables_of(r)) vars.insert(v);
  std::set<std::string> taken(vars.begin(), vars.end());
  taken.insert(avoid.begin(), avoid.end());
  taken.insert(x.begin(), x.end());
  std::map<std::string, Term> rename;
  for (const auto& v : variables_of(r)) {
    if (!avoid.count(v) && std::find(x.begin(), x.end(), v) == x.end()) continue;
    std::string name = v;
    while (taken.count(name)) name += "_";
    taken.insert(name);
    rename.emplace(v, Term::var(name));
  }
  if (!rename.empty()) r = substitute(r, rename);

  const Atom& head = r.head.at(0);
  std::map<std::string, Term> sigma;
  for (size_t j = 0; j < head.args.size(); ++j) {
    const Term& t = head.args[j];
    if (t.is_var() && !sigma.count(t.name)) sigma.emplace(t.name, Term::var(x[j]));
  }
  NormalRule out;
  for (size_t j = 0; j < head.args.size(); ++j) {
    const Term& t = head.args[j];
    if (t.is_var() && sigma.at(t.name).name == x[j]) continue;
    out.zeta.push_back(Formula::atom(Atom::eq(Term::var(x[j]), substitute(t, sigma))));
  }
  std::vector<std::string> seen;
  for (const auto& l : r.body) {
    Atom a = substitute(l.atom, sigma);
    collect_variables(a, seen);
    if (l.positive && !a.is_equality() && intensional.count(a.predicate)) {
      out.theta.push_back(std::move(a));
    } else {
      out.zeta.push_back(Formula::literal({std::move(a), l.positive}));
    }
  }
  for (const auto& v : seen) {
    if (std::find(x.begin(), x.end(), v) == x.end() && std::find(out.y.begin(), out.y.end(), v) == out.y.end()) {
      out.y.push_back(v);
    }
  }
  return out;
}

Formula head_atom(const std::string& p, const std::vector<std::string>& x) {
  std::vector<Term> args;
  for (const auto& v : x) args.push_back(Term::var(v));
  return Formula::atom(Atom::pred(p, args));
}

}  // namespace

CompletionResult ordered_completion(const Program& p, const CompletionOptions& options) {
  if (!p.is_normal()) throw PreconditionError("ordered completion needs a normal program");
  const auto& tau = p.intensional();
  int n = p.max_intensional_arity();
  CompletionResult out;
  OrderScheme& scheme = out.scheme;
  scheme.c = order_width(tau.size(), n);

  FreshNames names;
  names.reserve(p.vocabulary());
  scheme.prec = names.symbol("prec");
  out.aux.add_predicate(scheme.prec, 2);
  for (const auto& q : tau) {
    int k = p.vocabulary().predicate_arity(q);
    scheme.arity[q] = k;
    auto& fs = scheme.functions[q];
    for (int s = 1; s <= scheme.c; ++s) {
      fs.push_back(names.symbol("o_" + lowered(q) + "_" + std::to_string(s)));
      out.aux.add_function(fs.back(), k);
    }
  }

  std::set<std::string> avoid = p.vocabulary().names();
  for (const auto& s : out.aux.names()) avoid.insert(s);
  avoid.insert("v");

  // varpi: prec is irreflexive and transitive.
  {
    auto pr = [&](const char* a, const char* b) {
      return Formula::atom(Atom::pred(scheme.prec, {Term::var(a), Term::var(b)}));
    };
    out.varpi = Formula::conj(
        {Formula::forall("x", Formula::negation(pr("x", "x"))),
         Formula::forall({"x", "y", "z"}, Formula::implies(Formula::conj({pr("x", "y"), pr("y", "z")}), pr("x", "z")))});
  }

  std::vector<Formula> parts;
  for (const auto& q : tau) {
    int k = scheme.arity[q];
    std::vector<std::string> x = head_variables(k, avoid);
    Formula lambda = head_atom(q, x);
    std::vector<Term> lambda_ord = scheme.ord(lambda.atom());
    std::vector<Formula> disjuncts;
    int index = 0;
    for (const auto& r : p.rules()) {
      if (r.head.empty() || r.head[0].predicate != q) continue;
      ++index;
      NormalRule nr = normalize(r, x, avoid, tau);
      std::vector<Formula> body = nr.zeta;
      for (const auto& t : nr.theta) body.push_back(Formula::atom(t));
      std::vector<std::string> all = x;
      all.insert(all.end(), nr.y.begin(), nr.y.end());
      parts.push_back(Formula::forall(all, body.empty() ? lambda : Formula::implies(Formula::conj(body), lambda)));

      std::vector<Formula> support = nr.zeta;
      for (const auto& t : nr.theta) {
        support.push_back(Formula::atom(t));
        support.push_back(lex_less(scheme, scheme.ord(t), lambda_ord));
      }
      Formula d = Formula::conj(std::move(support));
      if (options.skolemize && !nr.y.empty()) {
        std::map<std::string, Term> sigma;
        std::vector<Term> xs;
        for (const auto& v : x) xs.push_back(Term::var(v));
        for (size_t j = 0; j < nr.y.size(); ++j) {
          std::string f = names.symbol("sk_" + lowered(q) + "_" + std::to_string(index) + "_" + std::to_string(j + 1));
          out.aux.add_function(f, k);
          out.skolem.push_back(f);
          sigma.emplace(nr.y[j], Term::apply(f, xs));
        }
        d = substitute_terms(d, sigma);
      } else {
        d = Formula::exists(nr.y, d);
      }
      disjuncts.push_back(d);
    }
    Formula psi = Formula::forall(x, Formula::implies(lambda, Formula::disj(std::move(disjuncts))));
    out.psi[q] = psi;
    parts.push_back(psi);
  }
  for (const auto& r : p.rules()) {
    if (r.head.empty()) parts.push_back(universal_closure(rule_formula(r)));
  }
  out.body = Formula::conj(std::move(parts));

  Formula inner = out.body;
  // Order functions in scheme order, Skolem functions last.
  std::vector<SoSymbol> ordered;
  for (const auto& q : tau) {
    for (const auto& f : scheme.functions[q]) ordered.push_back({f, scheme.arity[q], true});
  }
  for (const auto& f : out.skolem) ordered.push_back({f, out.aux.function_arity(f), true});
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) inner = Formula::so_exists(*it, inner);
  out.sentence = Formula::so_exists({scheme.prec, 2, false}, Formula::conj({out.varpi, inner}));
  return out;
}

Formula singleton_condition(const Program& p) {
  const auto& preds = p.vocabulary().predicates();
  if (preds.size() > 16) throw ResourceLimit("too many predicates for the one-element case analysis");
  std::vector<std::pair<std::string, int>> list(preds.begin(), preds.end());
  std::vector<Formula> cases;
  for (uint32_t mask = 0; mask < (uint32_t(1) << list.size()); ++mask) {
    FiniteStructure s({"a"});
    for (size_t i = 0; i < list.size(); ++i) {
      s.add_relation(list[i].first, list[i].second);
      if (mask >> i & 1) s.set(list[i].first, Tuple(list[i].second, 0));
    }
    for (const auto& [f, arity] : p.vocabulary().functions()) s.add_function(f, arity);
    if (!check_stable(p, s)) continue;
    std::vector<Formula> lits;
    for (size_t i = 0; i < list.size(); ++i) {
      Formula a = Formula::atom(Atom::pred(list[i].first, std::vector<Term>(list[i].second, Term::var("x"))));
      lits.push_back((mask >> i & 1) ? a : Formula::negation(a));
    }
    cases.push_back(Formula::conj(std::move(lits)));
  }
  return Formula::exists("x", Formula::disj(std::move(cases)));
}

Formula completion_with_singleton_guard(const Program& p, const CompletionOptions& options) {
  CompletionResult r = ordered_completion(p, options);
  Formula one = Formula::exists("x", Formula::forall("y", Formula::atom(Atom::eq(Term::var("x"), Term::var("y")))));
  Formula two = Formula::exists(
      std::vector<std::string>{"x", "z"}, Formula::negation(Formula::atom(Atom::eq(Term::var("x"), Term::var("z")))));
  return Formula::disj({Formula::conj({one, singleton_condition(p)}), Formula::conj({two, r.sentence})});
}

// ---------------------------------------------------------------------------
// SMT-LIB emission

namespace {

// Pulls existential second-order quantifiers that occur only under
// conjunction and disjunction to the top.
Formula hoist(const Formula& f, std::vector<SoSymbol>& out) {
  switch (f.kind()) {
    case FormulaKind::SoExists:
      out.push_back(f.symbol());
      return hoist(f.child(), out);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(hoist(c, out));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    default:
      return f;
  }
}

bool has_so(const Formula& f) {
  if (f.is_so_quantifier()) return true;
  return std::any_of(f.children().begin(), f.children().end(), has_so);
}

class SmtWriter {
 public:
  SmtWriter(const FiniteStructure* s) : s_(s) {}

  std::string term(const Term& t) const {
    if (t.is_var()) return "x_" + t.name;
    std::string name = "f_" + t.name;
    if (t.args.empty()) return name;
    std::string out = "(" + name;
    for (const auto& a : t.args) out += " " + term(a);
    return out + ")";
  }

  std::string formula(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::True:
        return "true";
      case FormulaKind::False:
        return "false";
      case FormulaKind::Atom: {
        const Atom& a = f.atom();
        if (a.is_equality()) return "(= " + term(a.args[0]) + " " + term(a.args[1]) + ")";
        std::string name = "r_" + a.predicate;
        if (a.args.empty()) return name;
        std::string out = "(" + name;
        for (const auto& t : a.args) out += " " + term(t);
        return out + ")";
      }
      case FormulaKind::Not:
        return "(not " + formula(f.child()) + ")";
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::string out = f.kind() == FormulaKind::And ? "(and" : "(or";
        for (const auto& c : f.children()) out += " " + formula(c);
        return out + ")";
      }
      case FormulaKind::Implies:
        return "(=> " + formula(f.child(0)) + " " + formula(f.child(1)) + ")";
      case FormulaKind::Iff:
        return "(= " + formula(f.child(0)) + " " + formula(f.child(1)) + ")";
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        return std::string(f.kind() == FormulaKind::Forall ? "(forall" : "(exists") + " ((x_" + f.variable() +
               " Dom)) " + formula(f.child()) + ")";
      default:
        throw PreconditionError("second-order quantifier left inside the sentence");
    }
  }

  std::string element(int e) const { return "d_" + s_->element_name(e); }

 private:
  const FiniteStructure* s_;
};

std::string sort_list(int arity) {
  std::string out = "(";
  for (int i = 0; i < arity; ++i) out += i ? " Dom" : "Dom";
  return out + ")";
}

}  // namespace

std::string emit_smtlib(const Formula& sentence, const FiniteStructure* s, const SmtOptions& options) {
  std::vector<SoSymbol> hoisted;
  Formula body = hoist(sentence, hoisted);
  if (has_so(body)) throw PreconditionError("sentence has a second-order quantifier that cannot be hoisted");
  for (size_t i = 0; i < hoisted.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (hoisted[i].name == hoisted[j].name) throw PreconditionError("second-order symbol bound twice");
    }
  }
  Vocabulary free = vocabulary_of(body);
  Vocabulary declared;
  std::set<std::string> hoisted_names;
  for (const auto& h : hoisted) {
    hoisted_names.insert(h.name);
    if (h.is_function) {
      declared.add_function(h.name, h.arity);
    } else {
      declared.add_predicate(h.name, h.arity);
    }
  }
  for (const auto& [name, arity] : free.predicates()) {
    if (!hoisted_names.count(name)) declared.add_predicate(name, arity);
  }
  for (const auto& [name, arity] : free.functions()) {
    if (!hoisted_names.count(name)) declared.add_function(name, arity);
  }
  bool rank = options.integer_order && declared.has_predicate(options.order_predicate);

  SmtWriter w(s);
  std::ostringstream out;
  std::string logic = s ? "UFDT" : "UF";
  if (rank) logic += "LIA";
  out << "(set-logic " << logic << ")\n";
  if (s) {
    out << "(declare-datatype Dom (";
    for (size_t e = 0; e < s->size(); ++e) out << (e ? " " : "") << "(" << w.element(static_cast<int>(e)) << ")";
    out << "))\n";
  } else {
    out << "(declare-sort Dom 0)\n";
  }
  for (const auto& [name, arity] : declared.predicates()) {
    if (rank && name == options.order_predicate) {
      out << "(declare-fun rank_" << name << " (Dom) Int)\n";
      out << "(define-fun r_" << name << " ((a Dom) (b Dom)) Bool (< (rank_" << name << " a) (rank_" << name
          << " b)))\n";
      continue;
    }
    out << "(declare-fun r_" << name << " " << sort_list(arity) << " Bool)\n";
  }
  for (const auto& [name, arity] : declared.functions()) {
    out << "(declare-fun f_" << name << " " << sort_list(arity) << " Dom)\n";
  }
  if (s) {
    for (const auto& [name, arity] : declared.predicates()) {
      if (hoisted_names.count(name) || !s->vocabulary().has_predicate(name)) continue;
      for (uint64_t i = 0; i < tuple_count(s->size(), arity); ++i) {
        Tuple t = tuple_at(i, s->size(), arity);
        std::string atom = "r_" + name;
        if (arity > 0) {
          atom = "(" + atom;
          for (int e : t) atom += " " + w.element(e);
          atom += ")";
        }
        out << "(assert " << (s->holds(name, t) ? atom : "(not " + atom + ")") << ")\n";
      }
    }
    for (const auto& [name, arity] : declared.functions()) {
      if (hoisted_names.count(name) || !s->vocabulary().has_function(name)) continue;
      for (uint64_t i = 0; i < tuple_count(s->size(), arity); ++i) {
        Tuple t = tuple_at(i, s->size(), arity);
        std::string app = "f_" + name;
        if (arity > 0) {
          app = "(" + app;
          for (int e : t) app += " " + w.element(e);
          app += ")";
        }
        out << "(assert (= " << app << " " << w.element(s->value(name, t)) << "))\n";
      }
    }
  }
  out << "(assert " << w.formula(body) << ")\n";
  out << "(check-sat)\n";
  return out.str();
}

std::string emit_smtlib(const CompletionResult& r, const FiniteStructure* s, const SmtOptions& options) {
  SmtOptions o = options;
  o.order_predicate = r.scheme.prec;
  return emit_smtlib(r.sentence, s, o);
}

// ---------------------------------------------------------------------------
// SMT-LIB well-formedness

namespace {

struct SExpr {
  bool list = false;
  std::string atom;
  std::vector<SExpr> items;
};

class SExprReader {
 public:
  explicit SExprReader(const std::string& text) : text_(text) {}

  bool done() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input");
    char ch = text_[pos_];
    if (ch == ')') throw SyntaxError("unbalanced ')'");
    if (ch == '(') {
      ++pos_;
      SExpr e;
      e.list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw SyntaxError("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    SExpr e;
    if (ch == '|') {
      size_t end = text_.find('|', pos_ + 1);
      if (end == std::string::npos) throw SyntaxError("unterminated quoted symbol");
      e.atom = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return e;
    }
    if (ch == '"') {
      size_t end = text_.find('"', pos_ + 1);
      if (end == std::string::npos) throw SyntaxError("unterminated string");
      e.atom = text_.substr(pos_, end - pos_ + 1);
      pos_ = end + 1;
      return e;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';') {
      ++pos_;
    }
    e.atom = text_.substr(start, pos_ - start);
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
};

struct Signature {
  std::vector<std::string> args;
  std::string result;
};

class SmtChecker {
 public:
  void command(const SExpr& c) {
    if (!c.list || c.items.empty() || c.items[0].list) throw SyntaxError("command must be a non-empty list");
    const std::string& op = c.items[0].atom;
    if (op == "set-logic") {
      expect(c, 2);
    } else if (op == "set-option" || op == "set-info") {
      if (c.items.size() < 2) throw SyntaxError(op + " needs an argument");
    } else if (op == "declare-sort") {
      expect(c, 3);
      declare_sort(symbol(c.items[1]));
    } else if (op == "declare-datatype") {
      expect(c, 3);
      std::string sort = symbol(c.items[1]);
      declare_sort(sort);
      if (!c.items[2].list || c.items[2].items.empty()) throw SyntaxError("datatype needs constructors");
      for (const auto& ctor : c.items[2].items) {
        if (!ctor.list || ctor.items.size() != 1) throw SyntaxError("only nullary constructors are supported");
        declare_fun(symbol(ctor.items[0]), {{}, sort});
      }
    } else if (op == "declare-fun") {
      expect(c, 4);
      Signature sig;
      if (!c.items[2].list) throw SyntaxError("declare-fun needs an argument sort list");
      for (const auto& s : c.items[2].items) sig.args.push_back(sort(s));
      sig.result = sort(c.items[3]);
      declare_fun(symbol(c.items[1]), sig);
    } else if (op == "declare-const") {
      expect(c, 3);
      declare_fun(symbol(c.items[1]), {{}, sort(c.items[2])});
    } else if (op == "define-fun") {
      expect(c, 5);
      Signature sig;
      std::vector<std::pair<std::string, std::string>> params;
      if (!c.items[2].list) throw SyntaxError("define-fun needs a parameter list");
      for (const auto& p : c.items[2].items) {
        if (!p.list || p.items.size() != 2) throw SyntaxError("malformed parameter");
        params.emplace_back(symbol(p.items[0]), sort(p.items[1]));
        sig.args.push_back(params.back().second);
      }
      sig.result = sort(c.items[3]);
      scopes_.emplace_back(params.begin(), params.end());
      std::string got = type(c.items[4]);
      scopes_.pop_back();
      if (got != sig.result) throw SyntaxError("define-fun body has sort " + got);
      declare_fun(symbol(c.items[1]), sig);
    } else if (op == "assert") {
      expect(c, 2);
      if (type(c.items[1]) != "Bool") throw SyntaxError("assertion is not Boolean");
    } else if (op == "check-sat" || op == "get-model" || op == "exit") {
      expect(c, 1);
    } else {
      throw SyntaxError("unknown command '" + op + "'");
    }
  }

 private:
  static void expect(const SExpr& c, size_t n) {
    if (c.items.size() != n) throw SyntaxError("wrong number of arguments to " + c.items[0].atom);
  }

  static std::string symbol(const SExpr& e) {
    if (e.list || e.atom.empty()) throw SyntaxError("symbol expected");
    return e.atom;
  }

  void declare_sort(const std::string& s) {
    if (!sorts_.insert(s).second) throw SyntaxError("sort '" + s + "' declared twice");
  }

  void declare_fun(const std::string& name, Signature sig) {
    if (!funs_.emplace(name, std::move(sig)).second) throw SyntaxError("symbol '" + name + "' declared twice");
  }

  std::string sort(const SExpr& e) const {
    std::string s = symbol(e);
    if (s != "Bool" && s != "Int" && !sorts_.count(s)) throw SyntaxError("unknown sort '" + s + "'");
    return s;
  }

  static bool numeral(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  }

  std::string lookup_var(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return "";
  }

  std::string apply(const std::string& name, const std::vector<std::string>& args) const {
    auto it = funs_.find(name);
    if (it == funs_.end()) throw SyntaxError("undeclared symbol '" + name + "'");
    if (it->second.args != args) throw SyntaxError("ill-sorted application of '" + name + "'");
    return it->second.result;
  }

  std::string type(const SExpr& e) {
    if (!e.list) {
      if (e.atom == "true" || e.atom == "false") return "Bool";
      if (numeral(e.atom)) return "Int";
      std::string v = lookup_var(e.atom);
      if (!v.empty()) return v;
      return apply(e.atom, {});
    }
    if (e.items.empty() || e.items[0].list) throw SyntaxError("malformed term");
    const std::string& op = e.items[0].atom;
    if (op == "forall" || op == "exists") {
      if (e.items.size() != 3 || !e.items[1].list || e.items[1].items.empty()) {
        throw SyntaxError("malformed quantifier");
      }
      std::map<std::string, std::string> scope;
      for (const auto& b : e.items[1].items) {
        if (!b.list || b.items.size() != 2) throw SyntaxError("malformed binder");
        scope[symbol(b.items[0])] = sort(b.items[1]);
      }
      scopes_.push_back(std::move(scope));
      std::string body = type(e.items[2]);
      scopes_.pop_back();
      if (body != "Bool") throw SyntaxError("quantifier body is not Boolean");
      return "Bool";
    }
    std::vector<std::string> args;
    for (size_t i = 1; i < e.items.size(); ++i) args.push_back(type(e.items[i]));
    auto all = [&](const std::string& s) { return std::all_of(args.begin(), args.end(), [&](const auto& a) { return a == s; }); };
    if (op == "not") {
      if (args.size() != 1 || !all("Bool")) throw SyntaxError("ill-sorted not");
      return "Bool";
    }
    if (op == "and" || op == "or" || op == "=>" || op == "xor") {
      if (args.size() < 2 || !all("Bool")) throw SyntaxError("ill-sorted " + op);
      return "Bool";
    }
    if (op == "=" || op == "distinct") {
      if (args.size() < 2 || !all(args[0])) throw SyntaxError("ill-sorted " + op);
      return "Bool";
    }
    if (op == "ite") {
      if (args.size() != 3 || args[0] != "Bool" || args[1] != args[2]) throw SyntaxError("ill-sorted ite");
      return args[1];
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      if (args.size() < 2 || !all("Int")) throw SyntaxError("ill-sorted " + op);
      return "Bool";
    }
    if (op == "+" || op == "-" || op == "*") {
      if (args.empty() || !all("Int")) throw SyntaxError("ill-sorted " + op);
      return "Int";
    }
    return apply(op, args);
  }

  std::set<std::string> sorts_;
  std::map<std::string, Signature> funs_;
  std::vector<std::map<std::string, std::string>> scopes_;
};

}  // namespace

std::string check_smtlib(const std::string& text) {
  try {
    SExprReader reader(text);
    SmtChecker checker;
    int commands = 0;
    while (!reader.done()) {
      checker.command(reader.read());
      ++commands;
    }
    if (commands == 0) return "no commands";
    return "";
  } catch (const Error& e) {
    return e.what();
  }
}

SolverVerdict run_solver(const std::string& solver, const std::string& smt) {
  if (solver.empty()) throw SolverError("no solver configured");
  char path[] = "/tmp/smk-XXXXXX.smt2";
  int fd = mkstemps(path, 5);
  if (fd < 0) throw SolverError("cannot create a temporary file");
  {
    FILE* f = fdopen(fd, "w");
    if (!f) {
      close(fd);
      throw SolverError("cannot write the temporary file");
    }
    fwrite(smt.data(), 1, smt.size(), f);
    fclose(f);
  }
  std::string cmd = solver + " '" + path + "' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    unlink(path);
    throw SolverError("cannot start solver '" + solver + "'");
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  unlink(path);
  std::string first = output.substr(0, output.find('\n'));
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw SolverError("solver '" + solver + "' failed: " + (first.empty() ? "exit status " + std::to_string(WEXITSTATUS(status)) : first));
  }
  if (first == "sat") return SolverVerdict::Sat;
  if (first == "unsat") return SolverVerdict::Unsat;
  if (first == "unknown") return SolverVerdict::Unknown;
  throw SolverError("unexpected solver output: " + first);
}

}  // namespace smk
