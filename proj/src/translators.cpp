#include "smk/translators.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "smk/parser.hpp"

namespace smk {

namespace {

Term V(const std::string& name) { return Term::var(name); }
Term C(const std::string& name) { return Term::apply(name); }
Atom P(const std::string& name, std::vector<Term> args) { return Atom::pred(name, std::move(args)); }

std::vector<Term> vars(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(V(n));
  return out;
}

std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string lowered(const std::string& s) {
  std::string out = s;
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

// Names for rule variables that avoid a given set.
class VarPool {
 public:
  explicit VarPool(std::set<std::string> taken) : taken_(std::move(taken)) {}
  std::string get(const std::string& base) {
    std::string name = base;
    while (taken_.count(name)) name += "_";
    taken_.insert(name);
    return name;
  }
  std::vector<std::string> get(const std::string& base, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back(get(base + std::to_string(i)));
    return out;
  }
  // base1, base2, ... across calls
  std::string next(const std::string& base) { return get(base + std::to_string(++counters_[base])); }

 private:
  std::set<std::string> taken_;
  std::map<std::string, int> counters_;
};

void add_role(Translation& t, const std::string& name, int arity, bool function, const std::string& role) {
  if (function) {
    t.aux.add_function(name, arity);
  } else {
    t.aux.add_predicate(name, arity);
  }
  t.roles.emplace_back(name, role);
}

// ---------------------------------------------------------------------------
// Disjunctive to normal

struct Encoding {
  std::string enc, enc_c, ok, mrg, in, subc, equ, tru, fal;
  std::map<std::string, std::string> code;  // predicate -> constant
  std::string eps;
};

// enc-chain for ⌈P(s̄)⌉ placed between `from` and `to`, with the intermediate
// codes of s̄ built from c_P.
void enc_chain(const Encoding& e, const Term& from, const Atom& a, const Term& to, VarPool& pool,
               std::vector<Literal>& body) {
  Term code = C(e.code.at(a.predicate));
  for (const auto& arg : a.args) {
    Term u = V(pool.next("U"));
    body.push_back(pos(P(e.enc, {code, arg, u})));
    code = u;
  }
  body.push_back(pos(P(e.enc, {from, code, to})));
}

}  // namespace

Translation translate_d2n(const Program& p) {
  Translation t;
  FreshNames names;
  names.reserve(p.vocabulary());
  Encoding e;
  e.enc = names.symbol("enc");
  e.enc_c = names.symbol("enc_c");
  e.ok = names.symbol("ok_e");
  e.mrg = names.symbol("mrg");
  e.in = names.symbol("in");
  e.subc = names.symbol("subc");
  e.equ = names.symbol("equ");
  e.tru = names.symbol("true");
  e.fal = names.symbol("false");
  for (const auto& [pred, arity] : p.vocabulary().predicates()) e.code[pred] = names.symbol("c_" + pred);
  e.eps = names.symbol("c_eps");

  for (const auto& [pred, c] : e.code) add_role(t, c, 0, true, "code of " + pred);
  add_role(t, e.eps, 0, true, "code of the empty multiset");
  add_role(t, e.enc, 3, false, "encoding");
  add_role(t, e.enc_c, 3, false, "complement of " + e.enc);
  add_role(t, e.ok, 2, false, "totality of " + e.enc);
  add_role(t, e.mrg, 3, false, "multiset union");
  add_role(t, e.in, 2, false, "membership");
  add_role(t, e.subc, 2, false, "sub-multiset");
  add_role(t, e.equ, 2, false, "multiset equality");
  add_role(t, e.tru, 1, false, "sets of atoms that hold");
  add_role(t, e.fal, 1, false, "sets of atoms that fail");

  std::vector<Rule> rules;
  Term X = V("X"), Y = V("Y"), Z = V("Z"), U = V("U"), W = V("W"), Vv = V("V");
  Term eps = C(e.eps);
  auto neq = [](Term a, Term b) { return neg(Atom::eq(std::move(a), std::move(b))); };

  std::vector<std::string> all_codes;
  for (const auto& [pred, c] : e.code) all_codes.push_back(c);
  all_codes.push_back(e.eps);
  for (const auto& c : all_codes) rules.push_back({{}, {pos(P(e.enc, {X, Y, C(c)}))}});
  rules.push_back({{P(e.enc, {X, Y, Z})}, {neg(P(e.enc_c, {X, Y, Z}))}});
  rules.push_back({{P(e.enc_c, {X, Y, Z})}, {neg(P(e.enc, {X, Y, Z}))}});
  rules.push_back({{}, {pos(P(e.enc, {X, Y, Z})), pos(P(e.enc, {U, Vv, Z})), neq(X, U)}});
  rules.push_back({{}, {pos(P(e.enc, {X, Y, Z})), pos(P(e.enc, {U, Vv, Z})), neq(Y, Vv)}});
  rules.push_back({{P(e.ok, {X, Y})}, {pos(P(e.enc, {X, Y, Z}))}});
  rules.push_back({{P(e.ok, {X, Y})}, {neg(P(e.ok, {X, Y}))}});
  rules.push_back({{}, {pos(P(e.enc, {X, Y, Z})), pos(P(e.enc, {X, Y, U})), neq(Z, U)}});

  rules.push_back({{P(e.mrg, {X, Y, X})}, {pos(Atom::eq(Y, eps))}});
  rules.push_back({{P(e.mrg, {X, Y, Z})},
                   {pos(P(e.mrg, {X, U, Vv})), pos(P(e.enc, {U, W, Y})), pos(P(e.enc, {Vv, W, Z}))}});
  rules.push_back({{P(e.in, {U, Y})}, {pos(P(e.enc, {X, U, Y}))}});
  rules.push_back({{P(e.in, {U, Y})}, {pos(P(e.enc, {X, Z, Y})), pos(P(e.in, {U, X}))}});
  rules.push_back({{P(e.subc, {X, Y})}, {pos(Atom::eq(X, eps))}});
  rules.push_back({{P(e.subc, {X, Y})}, {pos(P(e.subc, {U, Y})), pos(P(e.enc, {U, Vv, X})), pos(P(e.in, {Vv, Y}))}});
  rules.push_back({{P(e.equ, {X, Y})}, {pos(P(e.subc, {X, Y})), pos(P(e.subc, {Y, X}))}});

  rules.push_back({{P(e.tru, {Y})}, {pos(P(e.tru, {X})), pos(P(e.equ, {X, Y}))}});
  const auto& intensional = p.intensional();
  for (const auto& r : p.rules()) {
    auto own = variables_of(r);
    VarPool pool(std::set<std::string>(own.begin(), own.end()));
    std::vector<Literal> body;
    std::vector<Atom> pos_int;
    std::vector<Literal> rest;
    for (const auto& l : r.body) {
      if (l.positive && !l.atom.is_equality() && intensional.count(l.atom.predicate)) {
        pos_int.push_back(l.atom);
      } else {
        rest.push_back(l);
      }
    }
    std::vector<Term> xs, ys;
    for (size_t i = 0; i < pos_int.size(); ++i) {
      xs.push_back(V(pool.get("X" + std::to_string(i + 1))));
      ys.push_back(V(pool.get("Y" + std::to_string(i + 1))));
    }
    for (const auto& x : xs) body.push_back(pos(P(e.tru, {x})));
    for (size_t i = 0; i < pos_int.size(); ++i) enc_chain(e, ys[i], pos_int[i], xs[i], pool, body);
    Term acc = eps;
    for (size_t j = 0; j < r.head.size(); ++j) {
      Term w = V(pool.get("W" + std::to_string(j + 1)));
      enc_chain(e, acc, r.head[j], w, pool, body);
      acc = w;
    }
    for (size_t i = 0; i < ys.size(); ++i) {
      Term next = i + 1 == ys.size() ? V(pool.get("Z")) : V(pool.get("M" + std::to_string(i + 1)));
      body.push_back(pos(P(e.mrg, {acc, ys[i], next})));
      acc = next;
    }
    body.insert(body.end(), rest.begin(), rest.end());
    rules.push_back({{P(e.tru, {acc})}, body});
  }

  rules.push_back({{P(e.fal, {X})}, {pos(Atom::eq(X, eps))}});
  for (const auto& q : intensional) {
    int arity = p.vocabulary().predicate_arity(q);
    VarPool pool({"X", "Y"});
    Atom a = P(q, vars(pool.get("Z", arity)));
    std::vector<Literal> body{pos(P(e.fal, {X}))};
    enc_chain(e, X, a, Y, pool, body);
    body.push_back(neg(a));
    rules.push_back({{P(e.fal, {Y})}, body});
  }

  rules.push_back({{}, {pos(P(e.tru, {eps}))}});
  for (const auto& q : intensional) {
    int arity = p.vocabulary().predicate_arity(q);
    VarPool pool({"X", "Y"});
    Atom a = P(q, vars(pool.get("Z", arity)));
    std::vector<Literal> body{pos(P(e.tru, {X}))};
    enc_chain(e, Y, a, X, pool, body);
    body.push_back(pos(P(e.fal, {Y})));
    rules.push_back({{a}, body});
  }

  t.program = Program(std::move(rules));
  return t;
}

// ---------------------------------------------------------------------------
// Successor and finiteness programs

namespace {

const char* kSuccessorText = R"(
less(X,Y) :- not less_c(X,Y).
less_c(X,Y) :- not less(X,Y).
less(X,Z) :- less(X,Y), less(Y,Z).
:- less(X,Y), less(Y,X).
:- not less(X,Y), not less(Y,X), X != Y.
first_c(Y) :- less(X,Y).
first(X) :- not first_c(X).
last_c(X) :- less(X,Y).
last(X) :- not last_c(X).
succ_c(X,Z) :- less(X,Y), less(Y,Z).
succ(X,Y) :- not succ_c(X,Y), less(X,Y).
)";

const char* kFinitenessText = R"(
num(X) :- first(X).
num(Y) :- num(X), succ(X,Y).
finite :- num(X), last(X).
)";

}  // namespace

Program successor_program() { return parse_program(kSuccessorText); }

Program finiteness_program() { return successor_program() + parse_program(kFinitenessText); }

// ---------------------------------------------------------------------------
// Second-order sentences to disjunctive programs

namespace {

struct NormalSentence {
  std::vector<SoSymbol> exists, forall;
  std::vector<std::string> universal, existential;
  std::vector<std::vector<Literal>> dnf;  // formula terms, formula variable names
};

bool to_literal(const Formula& f, Literal& out) {
  if (f.kind() == FormulaKind::Atom) {
    out = pos(f.atom());
    return true;
  }
  if (f.kind() == FormulaKind::Not && f.child().kind() == FormulaKind::Atom) {
    out = neg(f.child().atom());
    return true;
  }
  return false;
}

bool to_conjunction(const Formula& f, std::vector<Literal>& out) {
  if (f.kind() == FormulaKind::True) return true;
  if (f.kind() == FormulaKind::And) {
    for (const auto& c : f.children()) {
      Literal l;
      if (!to_literal(c, l)) return false;
      out.push_back(l);
    }
    return true;
  }
  Literal l;
  if (!to_literal(f, l)) return false;
  out.push_back(l);
  return true;
}

NormalSentence split_sentence(const Formula& f, const std::string& who) {
  if (!is_sentence(f)) throw PreconditionError(who + ": formula has free variables");
  PrefixClass pc = classify_prefix(f);
  if (!pc.second_order_prefix_ok) {
    throw PreconditionError(who + ": second-order quantifier below the prefix");
  }
  if (pc.so_has_function) throw PreconditionError(who + ": second-order function variable");
  if (!pc.fo_forall_exists) {
    throw PreconditionError(who + ": first-order part is not ALL* SOME* with a quantifier-free matrix");
  }
  if (!pc.in_sigma2_forall_exists()) {
    throw PreconditionError(who + ": second-order prefix is not EX* ALL*");
  }
  NormalSentence ns;
  const Formula* cur = &f;
  while (cur->is_so_quantifier()) {
    (cur->kind() == FormulaKind::SoExists ? ns.exists : ns.forall).push_back(cur->symbol());
    cur = &cur->child();
  }
  while (cur->kind() == FormulaKind::Forall) {
    ns.universal.push_back(cur->variable());
    cur = &cur->child();
  }
  while (cur->kind() == FormulaKind::Exists) {
    ns.existential.push_back(cur->variable());
    cur = &cur->child();
  }
  std::set<std::string> seen;
  for (const auto& v : ns.universal) seen.insert(v);
  for (const auto& v : ns.existential) seen.insert(v);
  if (seen.size() != ns.universal.size() + ns.existential.size()) {
    throw PreconditionError(who + ": a first-order variable is quantified twice");
  }
  if (!vocabulary_of(*cur).functions().empty()) {
    for (const auto& [name, arity] : vocabulary_of(*cur).functions()) {
      if (arity > 0) throw PreconditionError(who + ": function symbol " + name + " in the matrix");
    }
  }
  const Formula& m = *cur;
  bool ok = true;
  if (m.kind() == FormulaKind::False) {
  } else if (m.kind() == FormulaKind::Or) {
    for (const auto& d : m.children()) {
      std::vector<Literal> lits;
      ok = ok && to_conjunction(d, lits);
      ns.dnf.push_back(lits);
    }
  } else {
    std::vector<Literal> lits;
    ok = to_conjunction(m, lits);
    ns.dnf.push_back(lits);
  }
  if (!ok) throw PreconditionError(who + ": matrix is not in disjunctive normal form");
  return ns;
}

const std::set<std::string> kSuccessorSymbols{"succ", "first", "last"};
const std::set<std::string> kOrderSymbols{"less", "less_c", "first_c", "last_c", "succ_c"};

// Shared state of the two counter-based translations and the copy-based one.
struct SoContext {
  NormalSentence ns;
  FreshNames names;
  std::map<std::string, std::string> pred;      // SO variable -> predicate
  std::map<std::string, std::string> negative;  // SO variable -> complement / F copy
  std::map<std::string, int> arity;
  std::set<std::string> universal_so;
  std::map<std::string, std::string> var;  // formula variable -> rule variable
  std::string d;
  int n = 0;

  SoContext(const Formula& f, const std::string& who) : ns(split_sentence(f, who)) {
    names.reserve(vocabulary_of(f));
    for (const auto& s : kSuccessorSymbols) names.reserve(s);
    for (const auto& s : kOrderSymbols) names.reserve(s);
    for (const auto& s : ns.exists) arity[s.name] = s.arity;
    for (const auto& s : ns.forall) {
      arity[s.name] = s.arity;
      universal_so.insert(s.name);
    }
    n = static_cast<int>(ns.universal.size());
    std::set<std::string> used;
    for (const auto& v : ns.universal) var[v] = unique_upper(v, used);
    for (const auto& v : ns.existential) var[v] = unique_upper(v, used);
  }

  static std::string unique_upper(const std::string& v, std::set<std::string>& used) {
    std::string name = v;
    if (name[0] != '_') name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    while (used.count(name)) name += "_";
    used.insert(name);
    return name;
  }

  std::vector<std::string> universal_vars() const {
    std::vector<std::string> out;
    for (const auto& v : ns.universal) out.push_back(var.at(v));
    return out;
  }

  std::set<std::string> all_vars() const {
    std::set<std::string> out;
    for (const auto& [k, v] : var) out.insert(v);
    return out;
  }

  Term term(const Term& t) const {
    if (t.is_var()) return V(var.at(t.name));
    Term out = Term::apply(t.name);
    for (const auto& a : t.args) out.args.push_back(term(a));
    return out;
  }

  Atom atom(const Atom& a, const std::string& predicate) const {
    std::vector<Term> args;
    for (const auto& t : a.args) args.push_back(term(t));
    if (a.is_equality()) return Atom::eq(args[0], args[1]);
    return P(predicate, args);
  }

  // body literal of a matrix literal; `prefix` is prepended to the arguments
  // of the universal second-order predicates.
  Literal literal(const Literal& l, const std::vector<Term>& prefix) const {
    if (l.atom.is_equality() || !pred.count(l.atom.predicate)) {
      return {atom(l.atom, l.atom.predicate), l.positive};
    }
    const auto& name = l.positive ? pred.at(l.atom.predicate) : negative.at(l.atom.predicate);
    Atom a = atom(l.atom, name);
    if (universal_so.count(l.atom.predicate)) a.args.insert(a.args.begin(), prefix.begin(), prefix.end());
    return pos(a);
  }
};

void check_reserved(const Formula& f, const std::set<std::string>& reserved, const std::string& who) {
  for (const auto& name : vocabulary_of(f).names()) {
    if (reserved.count(name)) throw PreconditionError(who + ": formula uses the reserved symbol " + name);
  }
}

std::vector<Atom> repeat(const std::string& pred, const std::vector<std::string>& xs) {
  std::vector<Atom> out;
  for (const auto& x : xs) out.push_back(P(pred, {V(x)}));
  return out;
}

Translation counter_translation(const Formula& f, const std::string& who) {
  SoContext cx(f, who);
  Translation t;
  std::vector<SoSymbol> so = cx.ns.exists;
  so.insert(so.end(), cx.ns.forall.begin(), cx.ns.forall.end());
  for (const auto& s : so) {
    cx.pred[s.name] = cx.names.symbol(lowered(s.name));
    cx.negative[s.name] = cx.names.symbol(cx.pred[s.name] + "_c");
  }
  cx.d = cx.names.symbol("d");
  for (const auto& s : so) {
    add_role(t, cx.pred[s.name], s.arity, false, "second-order variable " + s.name);
    add_role(t, cx.negative[s.name], s.arity, false, "complement of " + s.name);
  }
  add_role(t, cx.d, cx.n, false, "counter over the universal tuples");

  std::vector<Rule> rules;
  auto xs = cx.universal_vars();
  VarPool pool(cx.all_vars());
  std::map<std::string, std::vector<std::string>> zs;
  for (const auto& s : so) {
    VarPool local(cx.all_vars());
    zs[s.name] = local.get("Z", s.arity);
    rules.push_back({{P(cx.pred[s.name], vars(zs[s.name])), P(cx.negative[s.name], vars(zs[s.name]))}, {}});
  }
  auto last_x = repeat("last", xs);
  auto first_x = repeat("first", xs);
  for (const auto& s : cx.ns.forall) {
    for (const auto& name : {cx.negative[s.name], cx.pred[s.name]}) {
      std::vector<Literal> body;
      for (const auto& a : last_x) body.push_back(pos(a));
      body.push_back(pos(P(cx.d, vars(xs))));
      rules.push_back({{P(name, vars(zs[s.name]))}, body});
    }
  }
  std::vector<std::vector<Literal>> thetas;
  for (const auto& conj : cx.ns.dnf) {
    std::vector<Literal> body;
    for (const auto& l : conj) body.push_back(cx.literal(l, {}));
    thetas.push_back(body);
  }
  for (const auto& theta : thetas) {
    std::vector<Literal> body;
    for (const auto& a : first_x) body.push_back(pos(a));
    body.insert(body.end(), theta.begin(), theta.end());
    rules.push_back({{P(cx.d, vars(xs))}, body});
  }
  auto vs = pool.get("V", cx.n);
  for (const auto& theta : thetas) {
    for (int j = 0; j < cx.n; ++j) {
      std::vector<Literal> body;
      body.push_back(pos(P("succ", {V(vs[j]), V(xs[j])})));
      for (int l = j + 1; l < cx.n; ++l) {
        body.push_back(pos(P("last", {V(vs[l])})));
        body.push_back(pos(P("first", {V(xs[l])})));
      }
      std::vector<Term> prev;
      for (int l = 0; l < cx.n; ++l) prev.push_back(V(l < j ? xs[l] : vs[l]));
      body.push_back(pos(P(cx.d, prev)));
      body.insert(body.end(), theta.begin(), theta.end());
      rules.push_back({{P(cx.d, vars(xs))}, body});
    }
  }
  {
    std::vector<Literal> body;
    for (const auto& a : last_x) body.push_back(pos(a));
    body.push_back(neg(P(cx.d, vars(xs))));
    rules.push_back({{}, body});
  }
  t.program = Program(std::move(rules));
  return t;
}

}  // namespace

Translation translate_so2dlp_suc(const Formula& f) { return counter_translation(f, "so2dlp-suc"); }

Translation translate_so2dlp_fin(const Formula& f) {
  check_reserved(f, kOrderSymbols, "so2dlp-fin");
  Translation t = counter_translation(f, "so2dlp-fin");
  Program s = successor_program();
  t.program = t.program + s;
  for (const auto& [name, arity] : s.vocabulary().predicates()) {
    add_role(t, name, arity, false, kSuccessorSymbols.count(name) ? "successor relation" : "order guess");
  }
  return t;
}

Translation translate_so2dlp_arb(const Formula& f) {
  const std::string who = "so2dlp-arb";
  SoContext cx(f, who);
  Translation t;
  std::vector<SoSymbol> so = cx.ns.exists;
  so.insert(so.end(), cx.ns.forall.begin(), cx.ns.forall.end());
  for (const auto& s : so) {
    std::string base = lowered(s.name);
    cx.pred[s.name] = cx.names.symbol("t_" + base);
    cx.negative[s.name] = cx.names.symbol("f_" + base);
  }
  cx.d = cx.names.symbol("d");
  for (const auto& s : so) {
    int ar = s.arity + (cx.universal_so.count(s.name) ? cx.n : 0);
    add_role(t, cx.pred[s.name], ar, false, "true part of " + s.name);
    add_role(t, cx.negative[s.name], ar, false, "false part of " + s.name);
  }
  add_role(t, cx.d, cx.n, false, "saturation per universal tuple");

  std::vector<Rule> rules;
  auto xs = cx.universal_vars();
  std::map<std::string, std::vector<Term>> args;
  for (const auto& s : so) {
    VarPool local(cx.all_vars());
    std::vector<Term> a = vars(local.get("Z", s.arity));
    if (cx.universal_so.count(s.name)) a = concat(vars(xs), a);
    args[s.name] = a;
    rules.push_back({{P(cx.pred[s.name], a), P(cx.negative[s.name], a)}, {}});
  }
  for (const auto& s : cx.ns.forall) {
    for (const auto& name : {cx.negative[s.name], cx.pred[s.name]}) {
      rules.push_back({{P(name, args[s.name])}, {pos(P(cx.d, vars(xs)))}});
    }
  }
  for (const auto& conj : cx.ns.dnf) {
    std::vector<Literal> body;
    for (const auto& l : conj) body.push_back(cx.literal(l, vars(xs)));
    rules.push_back({{P(cx.d, vars(xs))}, body});
  }
  rules.push_back({{}, {neg(P(cx.d, vars(xs)))}});
  t.program = Program(std::move(rules));
  return t;
}

// ---------------------------------------------------------------------------
// Parity

Formula parity_sentence(int n) {
  if (n < 1) throw PreconditionError("parity sentence needs n >= 1");
  auto names = [n](const std::string& base) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
    return out;
  };
  auto xs = names("x"), ys = names("y"), zs = names("z");
  std::string p = "p" + std::to_string(2 * n);
  auto at = [](const std::string& pred, const std::vector<std::string>& a) {
    return Formula::atom(P(pred, vars(a)));
  };
  auto each = [&](const std::string& pred, const std::vector<std::string>& a) {
    std::vector<Formula> fs;
    for (const auto& v : a) fs.push_back(Formula::atom(P(pred, {V(v)})));
    return Formula::conj(fs);
  };
  auto succ = [&](const std::vector<std::string>& s, const std::vector<std::string>& u) {
    std::vector<Formula> alts;
    for (int i = 0; i < n; ++i) {
      std::vector<Formula> parts;
      for (int j = 0; j < i; ++j) parts.push_back(Formula::atom(Atom::eq(V(s[j]), V(u[j]))));
      parts.push_back(Formula::atom(P("succ", {V(s[i]), V(u[i])})));
      for (int j = i + 1; j < n; ++j) {
        parts.push_back(Formula::atom(P("last", {V(s[j])})));
        parts.push_back(Formula::atom(P("first", {V(u[j])})));
      }
      alts.push_back(Formula::conj(parts));
    }
    return Formula::disj(alts);
  };
  auto xr = [](Formula a, Formula b) { return Formula::iff(std::move(a), Formula::negation(std::move(b))); };
  auto yz = [&] {
    std::vector<std::string> v = ys;
    v.insert(v.end(), zs.begin(), zs.end());
    return v;
  }();
  auto xz = [&] {
    std::vector<std::string> v = xs;
    v.insert(v.end(), zs.begin(), zs.end());
    return v;
  }();

  Formula phi1 = Formula::implies(
      Formula::conj({Formula::forall(zs, Formula::implies(each("first", zs), Formula::iff(at("Y", zs), at(p, xz)))),
                     Formula::forall(yz, Formula::implies(succ(ys, zs),
                                                          Formula::iff(at(p, xz), xr(at("Y", ys), at("Y", zs)))))}),
      Formula::exists(zs, Formula::conj({each("last", zs), Formula::iff(at("X", xs), at("Y", zs))})));
  Formula phi2 = Formula::implies(
      Formula::conj({Formula::forall(zs, Formula::implies(each("first", zs), Formula::iff(at("X", zs), at("Y", zs)))),
                     Formula::forall(yz, Formula::implies(succ(ys, zs),
                                                          Formula::iff(at("X", zs), xr(at("Y", ys), at("Y", zs)))))}),
      Formula::exists(zs, Formula::conj({each("last", zs), Formula::negation(at("Y", zs))})));
  return Formula::so_exists({"X", n, false},
                            Formula::so_forall({"Y", n, false}, Formula::forall(xs, Formula::conj({phi1, phi2}))));
}

// ---------------------------------------------------------------------------
// Prenex and disjunctive normal form

namespace {

Formula nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case FormulaKind::True:
      return positive ? f : Formula::bottom();
    case FormulaKind::False:
      return positive ? f : Formula::top();
    case FormulaKind::Atom:
      return positive ? f : Formula::negation(f);
    case FormulaKind::Not:
      return nnf(f.child(), !positive);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(nnf(c, positive));
      bool as_and = (f.kind() == FormulaKind::And) == positive;
      return as_and ? Formula::conj(cs) : Formula::disj(cs);
    }
    case FormulaKind::Implies:
      return nnf(Formula::disj({Formula::negation(f.child(0)), f.child(1)}), positive);
    case FormulaKind::Iff: {
      const Formula& a = f.child(0);
      const Formula& b = f.child(1);
      if (positive) {
        return Formula::disj({Formula::conj({nnf(a, true), nnf(b, true)}),
                              Formula::conj({nnf(a, false), nnf(b, false)})});
      }
      return Formula::disj(
          {Formula::conj({nnf(a, true), nnf(b, false)}), Formula::conj({nnf(a, false), nnf(b, true)})});
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool universal = (f.kind() == FormulaKind::Forall) == positive;
      Formula body = nnf(f.child(), positive);
      return universal ? Formula::forall(f.variable(), body) : Formula::exists(f.variable(), body);
    }
    default:
      throw PreconditionError("second-order quantifier below the prefix");
  }
}

struct Prenex {
  std::vector<std::string> universal, existential;
  Formula matrix;
};

Prenex prenex(const Formula& f, FreshNames& names) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: {
      Prenex out;
      std::vector<Formula> cs;
      for (const auto& c : f.children()) {
        Prenex p = prenex(c, names);
        out.universal.insert(out.universal.end(), p.universal.begin(), p.universal.end());
        out.existential.insert(out.existential.end(), p.existential.begin(), p.existential.end());
        cs.push_back(p.matrix);
      }
      out.matrix = f.kind() == FormulaKind::And ? Formula::conj(cs) : Formula::disj(cs);
      return out;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string v = names.symbol(f.variable());
      Formula body = v == f.variable() ? f.child() : substitute_terms(f.child(), {{f.variable(), Term::var(v)}});
      Prenex p = prenex(body, names);
      if (f.kind() == FormulaKind::Forall) {
        p.universal.insert(p.universal.begin(), v);
      } else {
        if (!p.universal.empty()) {
          throw PreconditionError("first-order part has a universal quantifier below an existential one");
        }
        p.existential.insert(p.existential.begin(), v);
      }
      return p;
    }
    default:
      return {{}, {}, f};
  }
}

using Conjunct = std::vector<Formula>;

std::vector<Conjunct> dnf(const Formula& f, size_t cap) {
  switch (f.kind()) {
    case FormulaKind::True:
      return {Conjunct{}};
    case FormulaKind::False:
      return {};
    case FormulaKind::Or: {
      std::vector<Conjunct> out;
      for (const auto& c : f.children()) {
        auto d = dnf(c, cap);
        out.insert(out.end(), d.begin(), d.end());
        if (out.size() > cap) throw ResourceLimit("disjunctive normal form exceeds " + std::to_string(cap) + " disjuncts");
      }
      return out;
    }
    case FormulaKind::And: {
      std::vector<Conjunct> out{Conjunct{}};
      for (const auto& c : f.children()) {
        auto d = dnf(c, cap);
        std::vector<Conjunct> next;
        for (const auto& a : out) {
          for (const auto& b : d) {
            Conjunct merged = a;
            for (const auto& l : b) {
              if (std::find(merged.begin(), merged.end(), l) == merged.end()) merged.push_back(l);
            }
            next.push_back(std::move(merged));
            if (next.size() > cap) {
              throw ResourceLimit("disjunctive normal form exceeds " + std::to_string(cap) + " disjuncts");
            }
          }
        }
        out = std::move(next);
      }
      return out;
    }
    default:
      return {Conjunct{f}};
  }
}

bool contradictory(const Conjunct& c) {
  for (const auto& l : c) {
    if (l.kind() == FormulaKind::Not && std::find(c.begin(), c.end(), l.child()) != c.end()) return true;
  }
  return false;
}

}  // namespace

Formula to_prenex_dnf(const Formula& f, const NormalFormOptions& options) {
  std::vector<std::pair<bool, SoSymbol>> prefix;
  const Formula* cur = &f;
  while (cur->is_so_quantifier()) {
    prefix.emplace_back(cur->kind() == FormulaKind::SoExists, cur->symbol());
    cur = &cur->child();
  }
  FreshNames names;
  names.reserve(vocabulary_of(f));
  for (const auto& v : free_variables(*cur)) names.reserve(v);
  Prenex p = prenex(nnf(*cur, true), names);
  std::vector<Formula> disjuncts;
  for (const auto& c : dnf(p.matrix, options.max_disjuncts)) {
    if (!contradictory(c)) disjuncts.push_back(Formula::conj(c));
  }
  Formula out = Formula::disj(disjuncts);
  out = Formula::exists(p.existential, out);
  out = Formula::forall(p.universal, out);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    out = it->first ? Formula::so_exists(it->second, out) : Formula::so_forall(it->second, out);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string mapping_text(const Translation& t) {
  std::ostringstream out;
  for (const auto& [name, role] : t.roles) {
    bool fn = t.aux.has_function(name);
    int arity = fn ? t.aux.function_arity(name) : t.aux.predicate_arity(name);
    out << name << "/" << arity << (fn ? " function " : " predicate ") << role << "\n";
  }
  return out.str();
}

}  // namespace smk
