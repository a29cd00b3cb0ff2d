#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smk/syntax.hpp"

namespace smk {

enum class FormulaKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  SoForall,
  SoExists,
};

/// A second-order quantified symbol: predicate or function variable.
struct SoSymbol {
  std::string name;
  int arity = 0;
  bool is_function = false;

  auto operator<=>(const SoSymbol&) const = default;
  bool operator==(const SoSymbol&) const = default;
};

/// Immutable first/second-order formula. Copies share structure.
class Formula {
 public:
  Formula();  // TRUE

  static Formula top();
  static Formula bottom();
  static Formula atom(Atom a);
  static Formula literal(const Literal& l);
  static Formula negation(Formula f);
  /// Flattens nested conjunctions; the empty conjunction is TRUE and a
  /// single conjunct is returned as is.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula forall(const std::vector<std::string>& vars, Formula body);
  static Formula exists(const std::vector<std::string>& vars, Formula body);
  static Formula so_forall(SoSymbol s, Formula body);
  static Formula so_exists(SoSymbol s, Formula body);

  FormulaKind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(size_t i = 0) const { return node_->children.at(i); }
  const std::string& variable() const { return node_->variable; }
  const SoSymbol& symbol() const { return node_->symbol; }

  bool is_quantifier() const;
  bool is_so_quantifier() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    FormulaKind kind = FormulaKind::True;
    Atom atom;
    std::vector<Formula> children;
    std::string variable;
    SoSymbol symbol;
  };
  explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  static Formula nary(FormulaKind k, std::vector<Formula> fs);

  std::shared_ptr<const Node> node_;
};

/// Renames program variables to formula variables: the first letter is
/// lowered and "_" is appended while the result clashes with a symbol of the
/// rule or with the keyword "v". Fresh "_v" variables are kept.
Rule formula_variables(const Rule& r);
/// Rule as formula: conjunction of body literals implies disjunction of head
/// atoms (⊥ for an empty head), over formula_variables(r). Not closed.
Formula rule_formula(const Rule& r);
/// ∀ over the free individual variables, in first-occurrence order.
Formula universal_closure(const Formula& f);

std::vector<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);
/// Symbols used but not bound by a second-order quantifier.
Vocabulary vocabulary_of(const Formula& f);
/// Number of nodes; used by size guards.
size_t formula_size(const Formula& f);

/// Quantifier-prefix classification. so_blocks lists the second-order prefix as
/// alternating blocks; fo_* describe the first-order part that follows it.
struct PrefixClass {
  bool second_order_prefix_ok = false;  // all SO quantifiers sit in the leading prefix
  std::vector<bool> so_block_existential;
  int so_max_arity = 0;
  bool so_has_function = false;
  int so_existential_count = 0;
  int so_universal_count = 0;
  bool fo_forall_exists = false;  // ∀x̄ ∃ȳ θ with θ quantifier-free
  bool fo_forall_only = false;    // ∀x̄ θ with θ quantifier-free
  int fo_universal_count = 0;
  int fo_existential_count = 0;

  /// Σ¹_{1,k}[∀*]: at most one (existential) block, predicate variables only.
  bool in_sigma1_forall(int k) const;
  /// Σ¹₂[∀*∃*]: ∃-block then ∀-block of predicate variables, FO part ∀*∃*.
  bool in_sigma2_forall_exists() const;
  /// Σ¹_{2,n}[∀ⁿ∃*]: as above with SO arities ≤ n and at most n universal
  /// first-order quantifiers.
  bool in_sigma2n(int n) const;
  /// Least n with in_sigma2n(n), or -1.
  int sigma2_n() const;
};

PrefixClass classify_prefix(const Formula& f);

/// Replaces predicate atoms by name. When only_positive is set, atoms under an
/// odd number of negations (or on the left of an implication, or inside an
/// equivalence) are left alone.
Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& renaming,
                          bool only_positive);
Formula substitute_terms(const Formula& f, const std::map<std::string, Term>& sigma);

/// Keyword syntax: ALL/SOME/EX, ~ & v -> <->, TRUE/FALSE. Binary connectives
/// are fully parenthesised so printing followed by parsing is the identity.
std::string to_string(const Formula& f);

}  // namespace smk
