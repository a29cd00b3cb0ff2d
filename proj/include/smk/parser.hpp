#pragma once

#include <string>
#include <string_view>

#include "smk/formula.hpp"
#include "smk/syntax.hpp"

namespace smk {

class ParseError : public SyntaxError {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  // Accept identifiers starting with "_" (generated variables).
  bool allow_reserved = false;
};

/// Rules end with "."; heads are "|"-separated atoms, ":-" starts the body,
/// "not" negates, "=" and "!=" compare terms. "%" comments run to end of line.
/// Identifiers starting with an uppercase letter or "_" are variables.
Program parse_program(std::string_view text, const ParseOptions& options = {});

/// Keyword formula syntax, see to_string(const Formula&).
///   ALL x . f     SOME x . f          first-order
///   EX P/2 . f    ALL P/2 . f         second-order predicate variable
///   EX P . f      ALL P . f           arity 0 (uppercase P)
///   EX FUN f/1 . g                    function variable
/// An identifier is a variable when bound, a constant otherwise; uppercase
/// names must be bound.
Formula parse_formula(std::string_view text, const ParseOptions& options = {});

}  // namespace smk
