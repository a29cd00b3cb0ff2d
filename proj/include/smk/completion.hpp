#pragma once

#include <map>
#include <string>
#include <vector>

#include "smk/formula.hpp"
#include "smk/structure.hpp"
#include "smk/syntax.hpp"

namespace smk {

/// Order functions o_Q^1..o_Q^c per intensional Q, and the order predicate.
struct OrderScheme {
  int c = 0;
  std::map<std::string, std::vector<std::string>> functions;  // Q -> names of o_Q^1..o_Q^c
  std::map<std::string, int> arity;                          // Q -> arity
  std::string prec;

  /// (o_Q^c(t̄), ..., o_Q^1(t̄)).
  std::vector<Term> ord(const Atom& a) const;
};

/// Least integer >= log2(tau_size) + n; 0 when tau_size is 0.
int order_width(size_t tau_size, int n);

struct CompletionOptions {
  /// Replace the existential variables of each psi_P by Skolem functions.
  bool skolemize = false;
};

struct CompletionResult {
  Formula sentence;  // EX prec . (varpi & EX o... . body)
  Formula varpi;
  Formula body;      // closed, over the program vocabulary plus aux
  Vocabulary aux;
  OrderScheme scheme;
  std::map<std::string, Formula> psi;  // per intensional predicate, closed
  std::vector<std::string> skolem;
};

/// Ordered completion of a normal program. Throws PreconditionError for a
/// disjunctive program.
CompletionResult ordered_completion(const Program& p, const CompletionOptions& options = {});

/// [EX x ALL y (x = y) & zeta] v [EX x SOME z (x != z) & psi], zeta being the
/// truth-table compilation of the program over a one-element domain.
Formula completion_with_singleton_guard(const Program& p, const CompletionOptions& options = {});
/// zeta alone.
Formula singleton_condition(const Program& p);

/// Lexicographic s̄ < t̄ over prec. Throws PreconditionError on length mismatch.
Formula lex_less(const std::string& prec, const std::vector<Term>& s, const std::vector<Term>& t);
Formula lex_less(const OrderScheme& scheme, const std::vector<Term>& s, const std::vector<Term>& t);

struct SmtOptions {
  /// Interpret prec as the order of an integer rank instead of leaving it to
  /// the partial-order axioms.
  bool integer_order = false;
  std::string order_predicate = "prec";
};

/// SMT-LIB v2 text for a sentence whose second-order quantifiers are
/// existential and sit outside every first-order quantifier and negation.
/// With a structure, the domain becomes an enumerated sort and the symbols
/// it interprets are fixed by asserted tables; otherwise the domain is an
/// uninterpreted sort.
std::string emit_smtlib(const Formula& sentence, const FiniteStructure* s, const SmtOptions& options = {});
std::string emit_smtlib(const CompletionResult& r, const FiniteStructure* s, const SmtOptions& options = {});

/// Well-formedness: balanced s-expressions, known commands, declared and
/// well-sorted symbols. Returns an empty string when fine, else a diagnostic.
std::string check_smtlib(const std::string& text);

enum class SolverVerdict { Sat, Unsat, Unknown };

/// Thrown when the solver cannot be started or fails.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Runs `solver file` on the text and reads the verdict from the first line.
SolverVerdict run_solver(const std::string& solver, const std::string& smt);

}  // namespace smk
