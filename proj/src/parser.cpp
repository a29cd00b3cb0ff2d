#include "smk/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace smk {

ParseError::ParseError(const std::string& message, int line, int column)
    : SyntaxError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Bar,
  Neck,
  Eq,
  Neq,
  Tilde,
  Amp,
  Arrow,
  DArrow,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, "", line, col};
    if (ident_char(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    std::pair<std::string_view, Tok> table[] = {
        {"<->", Tok::DArrow}, {"->", Tok::Arrow}, {":-", Tok::Neck}, {"!=", Tok::Neq},
        {"(", Tok::LParen},   {")", Tok::RParen}, {",", Tok::Comma}, {".", Tok::Dot},
        {"|", Tok::Bar},      {"=", Tok::Eq},     {"~", Tok::Tilde}, {"&", Tok::Amp},
        {"/", Tok::Slash},
    };
    bool matched = false;
    for (const auto& [text, kind] : table) {
      if (starts(text)) {
        t.kind = kind;
        t.text = std::string(text);
        advance(text.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back(Token{Tok::End, "<end of input>", line, col});
  return out;
}

bool is_upper_start(const std::string& s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  const Token& peek(size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view text) const { return at(Tok::Ident) && peek().text == text; }
  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return next();
  }

  Token identifier() {
    Token t = expect(Tok::Ident, "identifier");
    if (t.text[0] == '_' && !options_.allow_reserved) {
      fail_at(t, "identifiers starting with '_' are reserved: '" + t.text + "'");
    }
    return t;
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  const ParseOptions& options_;
};

// ---------------------------------------------------------------------------
// Programs

class ProgramParser {
 public:
  ProgramParser(std::string_view text, const ParseOptions& options) : cur_(lex(text), options) {}

  Program parse() {
    std::vector<Rule> rules;
    while (!cur_.at(Tok::End)) rules.push_back(rule());
    try {
      return Program(std::move(rules));
    } catch (const SyntaxError& e) {
      throw ParseError(e.what(), cur_.peek().line, cur_.peek().column);
    }
  }

 private:
  Rule rule() {
    Rule r;
    if (!cur_.at(Tok::Neck)) {
      for (;;) {
        Token start = cur_.peek();
        Literal l = literal_or_equality();
        if (!l.positive) Cursor::fail_at(start, "negation in rule head");
        if (l.atom.is_equality()) Cursor::fail_at(start, "equality atom in rule head");
        r.head.push_back(std::move(l.atom));
        if (!cur_.at(Tok::Bar)) break;
        cur_.next();
      }
    }
    if (cur_.at(Tok::Neck)) {
      cur_.next();
      for (;;) {
        r.body.push_back(literal_or_equality());
        if (!cur_.at(Tok::Comma)) break;
        cur_.next();
      }
    }
    cur_.expect(Tok::Dot, "'.'");
    return r;
  }

  Literal literal_or_equality() {
    bool positive = true;
    if (cur_.at_ident("not")) {
      cur_.next();
      positive = false;
    }
    Token start = cur_.peek();
    Term lhs = term();
    if (cur_.at(Tok::Eq) || cur_.at(Tok::Neq)) {
      bool neq = cur_.next().kind == Tok::Neq;
      Term rhs = term();
      return {Atom::eq(std::move(lhs), std::move(rhs)), positive != neq};
    }
    if (lhs.is_var()) Cursor::fail_at(start, "variable '" + lhs.name + "' used as an atom");
    return {Atom::pred(lhs.name, lhs.args), positive};
  }

  Term term() {
    Token t = cur_.identifier();
    if (t.text == "not") Cursor::fail_at(t, "'not' is a keyword");
    if (is_upper_start(t.text)) {
      if (cur_.at(Tok::LParen)) Cursor::fail_at(cur_.peek(), "variable '" + t.text + "' applied to arguments");
      return Term::var(t.text);
    }
    std::vector<Term> args;
    if (cur_.at(Tok::LParen)) {
      cur_.next();
      if (!cur_.at(Tok::RParen)) {
        for (;;) {
          args.push_back(term());
          if (!cur_.at(Tok::Comma)) break;
          cur_.next();
        }
      }
      cur_.expect(Tok::RParen, "')'");
    }
    return Term::apply(t.text, std::move(args));
  }

  Cursor cur_;
};

// ---------------------------------------------------------------------------
// Formulas

bool is_keyword(const std::string& s) {
  return s == "ALL" || s == "SOME" || s == "EX" || s == "FUN" || s == "TRUE" || s == "FALSE" || s == "v";
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const ParseOptions& options) : cur_(lex(text), options) {}

  Formula parse() {
    Formula f = iff();
    if (!cur_.at(Tok::End)) cur_.fail("unexpected '" + cur_.peek().text + "'");
    return f;
  }

 private:
  struct Binding {
    bool second_order;
    SoSymbol symbol;
  };

  Formula iff() {
    Formula f = implication();
    while (cur_.at(Tok::DArrow)) {
      cur_.next();
      f = Formula::iff(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (cur_.at(Tok::Arrow)) {
      cur_.next();
      return Formula::implies(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (cur_.at_ident("v")) {
      cur_.next();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts[0] : Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (cur_.at(Tok::Amp)) {
      cur_.next();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
  }

  Formula unary() {
    if (cur_.at(Tok::Tilde)) {
      cur_.next();
      return Formula::negation(unary());
    }
    if (cur_.at_ident("ALL") || cur_.at_ident("SOME") || cur_.at_ident("EX")) return quantifier();
    return primary();
  }

  Formula quantifier() {
    std::string q = cur_.next().text;
    bool function = false;
    if (cur_.at_ident("FUN")) {
      if (q == "SOME") cur_.fail("SOME quantifies individual variables only");
      cur_.next();
      function = true;
    }
    Token name = cur_.identifier();
    if (is_keyword(name.text)) Cursor::fail_at(name, "keyword '" + name.text + "' used as a variable");
    std::optional<int> arity;
    if (cur_.at(Tok::Slash)) {
      cur_.next();
      Token a = cur_.expect(Tok::Ident, "arity");
      if (a.text.find_first_not_of("0123456789") != std::string::npos) Cursor::fail_at(a, "bad arity '" + a.text + "'");
      arity = std::stoi(a.text);
    }
    bool second_order = function || arity.has_value() || q == "EX" || (q == "ALL" && is_upper_start(name.text) &&
                                                                         name.text[0] != '_');
    if (second_order && q == "SOME") Cursor::fail_at(name, "SOME quantifies individual variables only");
    cur_.expect(Tok::Dot, "'.' after quantified variable");

    Binding b{second_order, SoSymbol{name.text, arity.value_or(0), function}};
    scope_.emplace_back(name.text, b);
    Formula body = iff();
    scope_.pop_back();

    if (!second_order) {
      return q == "ALL" ? Formula::forall(name.text, body) : Formula::exists(name.text, body);
    }
    return q == "ALL" ? Formula::so_forall(b.symbol, body) : Formula::so_exists(b.symbol, body);
  }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  Formula primary() {
    if (cur_.at(Tok::LParen)) {
      cur_.next();
      Formula f = iff();
      cur_.expect(Tok::RParen, "')'");
      return f;
    }
    if (cur_.at_ident("TRUE")) {
      cur_.next();
      return Formula::top();
    }
    if (cur_.at_ident("FALSE")) {
      cur_.next();
      return Formula::bottom();
    }
    Token start = cur_.peek();
    Application app = application();
    if (cur_.at(Tok::Eq) || cur_.at(Tok::Neq)) {
      bool neq = cur_.next().kind == Tok::Neq;
      Term lhs = to_term(start, app);
      Token rstart = cur_.peek();
      Term rhs = to_term(rstart, application());
      Formula eq = Formula::atom(Atom::eq(std::move(lhs), std::move(rhs)));
      return neq ? Formula::negation(eq) : eq;
    }
    const Binding* b = lookup(app.name);
    if (b) {
      if (!b->second_order || b->symbol.is_function) {
        Cursor::fail_at(start, "'" + app.name + "' is not a predicate variable");
      }
      if (static_cast<int>(app.args.size()) != b->symbol.arity) {
        Cursor::fail_at(start, "predicate variable '" + app.name + "' has arity " + std::to_string(b->symbol.arity));
      }
    } else if (is_upper_start(app.name) && app.name[0] != '_') {
      Cursor::fail_at(start, "unbound second-order variable '" + app.name + "'");
    }
    return Formula::atom(Atom::pred(app.name, std::move(app.args)));
  }

  struct Application {
    std::string name;
    std::vector<Term> args;
  };

  Application application() {
    Token t = cur_.identifier();
    if (is_keyword(t.text)) Cursor::fail_at(t, "unexpected keyword '" + t.text + "'");
    Application app{t.text, {}};
    if (cur_.at(Tok::LParen)) {
      cur_.next();
      if (!cur_.at(Tok::RParen)) {
        for (;;) {
          Token s = cur_.peek();
          app.args.push_back(to_term(s, application()));
          if (!cur_.at(Tok::Comma)) break;
          cur_.next();
        }
      }
      cur_.expect(Tok::RParen, "')'");
    }
    return app;
  }

  Term to_term(const Token& start, Application app) {
    const Binding* b = lookup(app.name);
    if (b && !b->second_order) {
      if (!app.args.empty()) Cursor::fail_at(start, "variable '" + app.name + "' applied to arguments");
      return Term::var(app.name);
    }
    if (b && !b->symbol.is_function) {
      Cursor::fail_at(start, "predicate variable '" + app.name + "' used as a term");
    }
    if (b && static_cast<int>(app.args.size()) != b->symbol.arity) {
      Cursor::fail_at(start, "function variable '" + app.name + "' has arity " + std::to_string(b->symbol.arity));
    }
    if (!b && is_upper_start(app.name)) {
      Cursor::fail_at(start, "unbound variable '" + app.name + "'");
    }
    return Term::apply(app.name, std::move(app.args));
  }

  Cursor cur_;
  std::vector<std::pair<std::string, Binding>> scope_;
};

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& options) {
  return ProgramParser(text, options).parse();
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  return FormulaParser(text, options).parse();
}

}  // namespace smk
