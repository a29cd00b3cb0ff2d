#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace smk {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad arity, equality in a head, unknown symbol, ...
class SyntaxError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (non-normal program,
/// sentence outside the expected prefix class, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable enumeration cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

struct Term {
  enum class Kind { Variable, Apply };

  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name);
  static Term apply(std::string name, std::vector<Term> args = {});

  bool is_var() const { return kind == Kind::Variable; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Atom {
  enum class Kind { Predicate, Equality };

  Kind kind = Kind::Predicate;
  std::string predicate;  // empty for equality atoms
  std::vector<Term> args;

  static Atom pred(std::string name, std::vector<Term> args = {});
  static Atom eq(Term lhs, Term rhs);

  bool is_equality() const { return kind == Kind::Equality; }

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

inline Literal pos(Atom a) { return {std::move(a), true}; }
inline Literal neg(Atom a) { return {std::move(a), false}; }

/// body -> head_1 | ... | head_n. An empty head is the constraint form (⊥).
struct Rule {
  std::vector<Atom> head;
  std::vector<Literal> body;

  bool operator==(const Rule&) const = default;
};

/// Predicate and function symbols with arities. A name is either a predicate
/// or a function, never both; arity-0 functions are individual constants.
class Vocabulary {
 public:
  void add_predicate(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);
  void merge(const Vocabulary& other);

  bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool contains(const std::string& name) const { return has_predicate(name) || has_function(name); }
  int predicate_arity(const std::string& name) const;
  int function_arity(const std::string& name) const;

  const std::map<std::string, int>& predicates() const { return predicates_; }
  const std::map<std::string, int>& functions() const { return functions_; }
  bool empty() const { return predicates_.empty() && functions_.empty(); }
  std::set<std::string> names() const;

  bool operator==(const Vocabulary&) const = default;

 private:
  std::map<std::string, int> predicates_;
  std::map<std::string, int> functions_;
};

/// A finite disjunctive program. The vocabulary and the intensional set are
/// derived from the rules on construction and never drift from them.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  /// Predicates occurring in some head.
  const std::set<std::string>& intensional() const { return intensional_; }
  bool is_normal() const;
  /// Largest arity among intensional predicates (0 when there are none).
  int max_intensional_arity() const;

  bool operator==(const Program& other) const { return rules_ == other.rules_; }

 private:
  std::vector<Rule> rules_;
  Vocabulary vocabulary_;
  std::set<std::string> intensional_;
};

Program operator+(const Program& a, const Program& b);

// Variables in order of first occurrence.
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const Atom& a);
std::vector<std::string> variables_of(const Rule& r);
void collect_variables(const Term& t, std::vector<std::string>& out);
void collect_variables(const Atom& a, std::vector<std::string>& out);

Term substitute(const Term& t, const std::map<std::string, Term>& sigma);
Atom substitute(const Atom& a, const std::map<std::string, Term>& sigma);
Rule substitute(const Rule& r, const std::map<std::string, Term>& sigma);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
/// One rule per line, in source order.
std::string to_string(const Program& p);

/// Generates names that avoid a set of taken names. Fresh variables use the
/// reserved "_v" prefix; symbol names get a numeric suffix on collision.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

  void reserve(const std::string& name) { taken_.insert(name); }
  void reserve(const Vocabulary& v);
  bool taken(const std::string& name) const { return taken_.count(name) != 0; }
  std::string symbol(const std::string& base);
  std::string variable();

 private:
  std::set<std::string> taken_;
  int counter_ = 0;
};

}  // namespace smk
