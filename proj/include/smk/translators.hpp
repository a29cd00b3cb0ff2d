#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smk/formula.hpp"
#include "smk/syntax.hpp"

namespace smk {

/// A translated program with the symbols it introduced.
struct Translation {
  Program program;
  /// Symbols the translation added (or renamed from second-order variables),
  /// to be existentially quantified.
  Vocabulary aux;
  /// (symbol, role) rows in introduction order, for the mapping sidecar.
  std::vector<std::pair<std::string, std::string>> roles;
};

/// Sidecar text: one "name/arity kind role" line per auxiliary symbol.
std::string mapping_text(const Translation& t);

/// Disjunctive to normal over infinite structures (the encoding construction).
Translation translate_d2n(const Program& p);

/// The eleven-rule program guessing a strict total order and deriving
/// first, last and succ from it.
Program successor_program();
/// successor_program plus num/finite.
Program finiteness_program();

/// Second-order sentence in the EX* ALL* ALL^n SOME* normal form with a
/// disjunctive normal form matrix, to a disjunctive program with a counter
/// walking the n-tuples along succ/first/last (given by the structure).
Translation translate_so2dlp_suc(const Formula& f);
/// translate_so2dlp_suc plus the successor program; succ/first/last become
/// auxiliary.
Translation translate_so2dlp_fin(const Formula& f);
/// Copies of the universal predicates per n-tuple, no successor needed.
Translation translate_so2dlp_arb(const Formula& f);

/// EX X/n ALL Y/n ALL x̄ (phi1 & phi2): p<2n> has an even number of tuples
/// on successor structures.
Formula parity_sentence(int n);

struct NormalFormOptions {
  size_t max_disjuncts = 4096;
};

/// Keeps the second-order prefix, moves the first-order part to prenex
/// ALL* SOME* form (renaming bound variables apart) and the matrix to
/// disjunctive normal form. Throws PreconditionError when the first-order
/// part has no ALL* SOME* prenex form by this procedure, ResourceLimit when
/// the matrix grows past the guard.
Formula to_prenex_dnf(const Formula& f, const NormalFormOptions& options = {});

}  // namespace smk
