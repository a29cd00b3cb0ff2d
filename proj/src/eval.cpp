#include "smk/eval.hpp"

#include <algorithm>
#include <limits>

namespace smk {

namespace {

constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();

uint64_t mul_sat(uint64_t a, uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

uint64_t pow_sat(uint64_t base, uint64_t exponent) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exponent && r != kMax; ++i) r = mul_sat(r, base);
  return r;
}

// Compiled terms and formulas refer to variables by slot. Symbols resolve
// either to a table of the structure or to a second-order slot.
struct CTerm {
  enum Kind { Var, Fun, SoFun } kind;
  int slot = -1;                         // Var: FO slot, SoFun: SO slot
  const std::vector<int>* table = nullptr;  // Fun
  std::vector<CTerm> args;
};

struct CNode {
  FormulaKind kind;
  // Atom
  bool equality = false;
  const std::vector<char>* table = nullptr;
  int so_slot = -1;
  std::vector<CTerm> args;
  // Connectives and quantifiers
  std::vector<CNode> children;
  int slot = -1;
  int arity = 0;
  bool function = false;
  size_t cells = 0;
};

class Compiler {
 public:
  Compiler(const FiniteStructure& s, const EvalOptions& options) : s_(s), options_(options) {}

  int fo_slots = 0;
  int so_slots = 0;
  std::vector<std::pair<std::string, int>> free_fo;  // name -> slot

  CNode compile(const Formula& f) {
    CNode n;
    n.kind = f.kind();
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
        break;
      case FormulaKind::Atom:
        compile_atom(f.atom(), n);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        n.slot = fo_slots++;
        fo_.emplace_back(f.variable(), n.slot);
        n.children.push_back(compile(f.child()));
        fo_.pop_back();
        break;
      }
      case FormulaKind::SoForall:
      case FormulaKind::SoExists: {
        const SoSymbol& sym = f.symbol();
        uint64_t cand = so_candidates(sym, s_.size());
        if (cand > options_.so_cap) {
          throw ResourceLimit("second-order symbol '" + sym.name + "' has " +
                              (cand == kMax ? std::string("too many") : std::to_string(cand)) +
                              " candidates, cap is " + std::to_string(options_.so_cap));
        }
        n.slot = so_slots++;
        n.arity = sym.arity;
        n.function = sym.is_function;
        n.cells = static_cast<size_t>(tuple_count(s_.size(), sym.arity));
        so_.push_back({sym, n.slot});
        n.children.push_back(compile(f.child()));
        so_.pop_back();
        break;
      }
      default:
        for (const auto& c : f.children()) n.children.push_back(compile(c));
    }
    return n;
  }

 private:
  struct SoBinding {
    SoSymbol symbol;
    int slot;
  };

  const SoBinding* so_lookup(const std::string& name) const {
    for (auto it = so_.rbegin(); it != so_.rend(); ++it) {
      if (it->symbol.name == name) return &*it;
    }
    return nullptr;
  }

  void compile_atom(const Atom& a, CNode& n) {
    n.equality = a.is_equality();
    for (const auto& t : a.args) n.args.push_back(compile_term(t));
    if (n.equality) return;
    if (const SoBinding* b = so_lookup(a.predicate)) {
      if (b->symbol.is_function || b->symbol.arity != static_cast<int>(a.args.size())) {
        throw SyntaxError("second-order variable '" + a.predicate + "' used with wrong kind or arity");
      }
      n.so_slot = b->slot;
      return;
    }
    if (!s_.vocabulary().has_predicate(a.predicate)) {
      throw SyntaxError("uninterpreted predicate '" + a.predicate + "'");
    }
    if (s_.vocabulary().predicate_arity(a.predicate) != static_cast<int>(a.args.size())) {
      throw SyntaxError("arity mismatch for predicate '" + a.predicate + "'");
    }
    n.table = &s_.relation_table(a.predicate);
  }

  CTerm compile_term(const Term& t) {
    CTerm c;
    c.kind = CTerm::Var;
    if (t.is_var()) {
      for (auto it = fo_.rbegin(); it != fo_.rend(); ++it) {
        if (it->first == t.name) {
          c.slot = it->second;
          return c;
        }
      }
      for (const auto& [name, slot] : free_fo) {
        if (name == t.name) {
          c.slot = slot;
          return c;
        }
      }
      c.slot = fo_slots++;
      free_fo.emplace_back(t.name, c.slot);
      return c;
    }
    for (const auto& a : t.args) c.args.push_back(compile_term(a));
    if (const SoBinding* b = so_lookup(t.name)) {
      if (!b->symbol.is_function || b->symbol.arity != static_cast<int>(t.args.size())) {
        throw SyntaxError("second-order variable '" + t.name + "' used with wrong kind or arity");
      }
      c.kind = CTerm::SoFun;
      c.slot = b->slot;
      return c;
    }
    // A bound individual variable written as a constant (parsed formulas
    // produce Apply terms only for unbound names, but built ones may not).
    if (t.args.empty()) {
      for (auto it = fo_.rbegin(); it != fo_.rend(); ++it) {
        if (it->first == t.name) {
          c.slot = it->second;
          return c;
        }
      }
    }
    if (!s_.vocabulary().has_function(t.name)) throw SyntaxError("uninterpreted function '" + t.name + "'");
    if (s_.vocabulary().function_arity(t.name) != static_cast<int>(t.args.size())) {
      throw SyntaxError("arity mismatch for function '" + t.name + "'");
    }
    c.kind = CTerm::Fun;
    c.table = &s_.function_table(t.name);
    return c;
  }

  const FiniteStructure& s_;
  const EvalOptions& options_;
  std::vector<std::pair<std::string, int>> fo_;
  std::vector<SoBinding> so_;
};

class Evaluator {
 public:
  Evaluator(size_t n, int fo_slots, int so_slots) : n_(n), fo_(fo_slots, 0), so_rel_(so_slots), so_fun_(so_slots) {}

  std::vector<int>& fo() { return fo_; }

  int term(const CTerm& t) {
    switch (t.kind) {
      case CTerm::Var:
        return fo_[t.slot];
      case CTerm::Fun:
        return (*t.table)[index(t.args)];
      case CTerm::SoFun:
        return so_fun_[t.slot][index(t.args)];
    }
    return 0;
  }

  size_t index(const std::vector<CTerm>& args) {
    size_t idx = 0;
    for (const auto& a : args) idx = idx * n_ + static_cast<size_t>(term(a));
    return idx;
  }

  bool eval(const CNode& f) {
    switch (f.kind) {
      case FormulaKind::True:
        return true;
      case FormulaKind::False:
        return false;
      case FormulaKind::Atom:
        if (f.equality) return term(f.args[0]) == term(f.args[1]);
        if (f.so_slot >= 0) return so_rel_[f.so_slot][index(f.args)] != 0;
        return (*f.table)[index(f.args)] != 0;
      case FormulaKind::Not:
        return !eval(f.children[0]);
      case FormulaKind::And:
        for (const auto& c : f.children) {
          if (!eval(c)) return false;
        }
        return true;
      case FormulaKind::Or:
        for (const auto& c : f.children) {
          if (eval(c)) return true;
        }
        return false;
      case FormulaKind::Implies:
        return !eval(f.children[0]) || eval(f.children[1]);
      case FormulaKind::Iff:
        return eval(f.children[0]) == eval(f.children[1]);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool want = f.kind == FormulaKind::Exists;
        int saved = fo_[f.slot];
        bool result = !want;
        for (size_t e = 0; e < n_; ++e) {
          fo_[f.slot] = static_cast<int>(e);
          if (eval(f.children[0]) == want) {
            result = want;
            break;
          }
        }
        fo_[f.slot] = saved;
        return result;
      }
      case FormulaKind::SoForall:
      case FormulaKind::SoExists:
        return eval_so(f);
    }
    return false;
  }

 private:
  bool eval_so(const CNode& f) {
    bool want = f.kind == FormulaKind::SoExists;
    int radix = f.function ? static_cast<int>(n_) : 2;
    std::vector<int> digits(f.cells, 0);
    if (f.function) {
      so_fun_[f.slot].assign(f.cells, 0);
    } else {
      so_rel_[f.slot].assign(f.cells, 0);
    }
    for (;;) {
      if (eval(f.children[0]) == want) return want;
      size_t i = f.cells;
      for (;;) {
        if (i == 0) return !want;
        --i;
        if (++digits[i] < radix) break;
        digits[i] = 0;
      }
      for (size_t j = i; j < f.cells; ++j) {
        if (f.function) {
          so_fun_[f.slot][j] = digits[j];
        } else {
          so_rel_[f.slot][j] = static_cast<char>(digits[j]);
        }
      }
    }
  }

  size_t n_;
  std::vector<int> fo_;
  std::vector<std::vector<char>> so_rel_;
  std::vector<std::vector<int>> so_fun_;
};

}  // namespace

uint64_t so_candidates(const SoSymbol& sym, size_t n) {
  uint64_t cells = tuple_count(n, sym.arity);
  return sym.is_function ? pow_sat(n, cells) : pow_sat(2, cells);
}

uint64_t so_enumeration_size(const Formula& f, size_t n) {
  uint64_t inner = 1;
  for (const auto& c : f.children()) inner = std::max(inner, so_enumeration_size(c, n));
  if (f.is_so_quantifier()) return mul_sat(so_candidates(f.symbol(), n), inner);
  return inner;
}

bool eval_formula(const FiniteStructure& s, const Formula& f, const Assignment& a, const EvalOptions& options) {
  Compiler compiler(s, options);
  CNode root = compiler.compile(f);
  Evaluator ev(s.size(), compiler.fo_slots, compiler.so_slots);
  for (const auto& [name, slot] : compiler.free_fo) {
    auto it = a.find(name);
    if (it == a.end()) throw PreconditionError("free variable '" + name + "' not assigned");
    if (it->second < 0 || static_cast<size_t>(it->second) >= s.size()) {
      throw PreconditionError("assignment of '" + name + "' outside the domain");
    }
    ev.fo()[slot] = it->second;
  }
  return ev.eval(root);
}

}  // namespace smk
