// smk: stable models over arbitrary structures, from the command line.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict, 2 input
// error, 3 resource cap, 4 external solver failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "smk/completion.hpp"
#include "smk/eval.hpp"
#include "smk/parser.hpp"
#include "smk/random.hpp"
#include "smk/semantics.hpp"
#include "smk/sm_sentence.hpp"
#include "smk/translators.hpp"

using namespace smk;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kCap = 3, kSolver = 4 };

class InputError : public Error {
 public:
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

template <class F>
auto parsing(const std::string& path, F parse) {
  std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const SyntaxError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Program load_program(const std::string& path) {
  return parsing(path, [](const std::string& t) { return parse_program(t); });
}
FiniteStructure load_structure(const std::string& path) {
  return parsing(path, [](const std::string& t) { return parse_structure(t); });
}
Formula load_formula(const std::string& path) {
  return parsing(path, [](const std::string& t) { return parse_formula(t); });
}

struct Options {
  std::string program, structure, input, output, solver;
  std::string kind;
  std::vector<std::string> aux;
  uint64_t cap = 0;
  uint64_t seed = 1;
  int count = 200;
  bool why = false, smt = false, verify = false, mapping = false, normalize = false, integer_order = false;
};

int cmd_check(const Options& o) {
  Program p = load_program(o.program);
  FiniteStructure s = load_structure(o.structure);
  bool stable = check_stable(p, s);
  std::cout << (stable ? "STABLE" : "NOT-STABLE") << "\n";
  if (o.why) {
    PropositionalProgram pp = reduct(p, s);
    std::cout << "reduct:\n" << to_string(pp, s);
    ProgressionOptions po;
    if (o.cap) po.clause_cap = o.cap;
    auto trace = progression_trace(pp, po);
    for (size_t k = 0; k < trace.size(); ++k) {
      std::cout << "step " << k << ":\n" << to_string(trace[k], s);
    }
  }
  return stable ? kOk : kNegative;
}

Vocabulary aux_vocabulary(const Options& o, const Program& p, const FiniteStructure& s) {
  if (o.aux.empty()) return uninterpreted(p, s);
  Vocabulary v;
  for (const auto& item : o.aux) {
    std::string name = item.substr(0, item.find('/'));
    if (p.vocabulary().has_predicate(name)) {
      v.add_predicate(name, p.vocabulary().predicate_arity(name));
    } else if (p.vocabulary().has_function(name)) {
      v.add_function(name, p.vocabulary().function_arity(name));
    } else {
      throw InputError("auxiliary symbol '" + name + "' does not occur in the program");
    }
  }
  return v;
}

int cmd_enumerate(const Options& o) {
  Program p = load_program(o.program);
  FiniteStructure s = load_structure(o.structure);
  Vocabulary aux = aux_vocabulary(o, p, s);
  EnumerateOptions eo;
  if (o.cap) eo.expansion_cap = o.cap;
  uint64_t count = 0;
  try {
    count = enumerate_stable(
        p, s, aux,
        [&](const FiniteStructure& m) {
          std::cout << "% model " << ++count << "\n" << to_string(m) << "\n";
          return true;
        },
        eo);
  } catch (const EnumerationLimit& e) {
    std::cout << "count: " << e.found << " (partial)\n";
    std::cerr << "smk: " << e.what() << "\n";
    return kCap;
  }
  std::cout << "count: " << count << "\n";
  return kOk;
}

void emit(const Options& o, const std::string& text, const std::string& suffix) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    write_file(o.output + suffix, text);
  }
}

void emit_mapping(const Options& o, const std::string& text) {
  if (!o.mapping) return;
  if (o.output.empty()) throw InputError("--emit-mapping needs -o to name the sidecar");
  write_file(o.output + ".map", text);
}

int cmd_translate(const Options& o) {
  const std::string& kind = o.kind;
  if (kind == "successor" || kind == "finiteness") {
    emit(o, to_string(kind == "successor" ? successor_program() : finiteness_program()), "");
    return kOk;
  }
  if (o.input.empty()) throw InputError("translate " + kind + " needs an input file");
  if (kind == "d2n") {
    Translation t = translate_d2n(load_program(o.input));
    emit(o, to_string(t.program), "");
    emit_mapping(o, mapping_text(t));
    return kOk;
  }
  if (kind == "oc") {
    CompletionResult r = ordered_completion(load_program(o.input));
    emit(o, to_string(r.sentence) + "\n", "");
    if (o.smt) {
      SmtOptions so;
      so.integer_order = o.integer_order;
      emit(o, emit_smtlib(r, nullptr, so), o.output.empty() ? "" : ".smt2");
    }
    if (o.mapping) {
      std::ostringstream m;
      m << r.scheme.prec << "/2 predicate order\n";
      for (const auto& [q, fs] : r.scheme.functions) {
        for (size_t i = 0; i < fs.size(); ++i) {
          m << fs[i] << "/" << r.scheme.arity.at(q) << " function order digit " << i + 1 << " of " << q << "\n";
        }
      }
      for (const auto& sk : r.skolem) m << sk << "/" << r.aux.function_arity(sk) << " function skolem\n";
      emit_mapping(o, m.str());
    }
    return kOk;
  }
  if (kind == "so2dlp-suc" || kind == "so2dlp-fin" || kind == "so2dlp-arb") {
    Formula f = load_formula(o.input);
    if (o.normalize) f = to_prenex_dnf(f);
    Translation t = kind == "so2dlp-suc"   ? translate_so2dlp_suc(f)
                    : kind == "so2dlp-fin" ? translate_so2dlp_fin(f)
                                           : translate_so2dlp_arb(f);
    emit(o, to_string(t.program), "");
    emit_mapping(o, mapping_text(t));
    return kOk;
  }
  throw InputError("unknown translation '" + kind + "'");
}

int cmd_solve(const Options& o) {
  Program p = load_program(o.program);
  FiniteStructure s = load_structure(o.structure);
  std::string solver = o.solver;
  if (solver.empty()) {
    const char* env = std::getenv("SMK_SOLVER");
    if (env) solver = env;
  }
  if (solver.empty()) throw SolverError("no solver configured (use --solver or SMK_SOLVER)");
  SmtOptions so;
  so.integer_order = o.integer_order;
  std::string smt = s.size() == 1 ? emit_smtlib(completion_with_singleton_guard(p), &s, so)
                                  : emit_smtlib(ordered_completion(p), &s, so);
  if (!o.output.empty()) write_file(o.output, smt);
  SolverVerdict v = run_solver(solver, smt);
  if (v == SolverVerdict::Unknown) throw SolverError("solver answered unknown");
  bool sat = v == SolverVerdict::Sat;
  std::cout << (sat ? "SAT" : "UNSAT") << "\n";
  if (o.verify) {
    uint64_t limit = o.cap ? o.cap : 3;
    if (s.size() > limit) {
      std::cout << "verify: skipped (domain larger than " << limit << ")\n";
    } else {
      bool expected = has_stable_expansion(p, s, uninterpreted(p, s));
      std::cout << "verify: " << (expected == sat ? "agrees" : "DISAGREES") << "\n";
      if (expected != sat) return kNegative;
    }
  }
  return sat ? kOk : kNegative;
}

// Randomized differential checks between independent routes through the
// library. Reports the first disagreement of each kind.
int cmd_selftest(const Options& o) {
  Rng rng(o.seed);
  int failures = 0;
  auto report = [&](const std::string& what, const std::string& detail) {
    if (++failures <= 5) std::cout << "MISMATCH " << what << "\n" << detail << "\n";
  };
  auto size = [&](int lo, int hi) { return static_cast<size_t>(std::uniform_int_distribution<int>(lo, hi)(rng)); };

  int n = o.count;
  for (int i = 0; i < n; ++i) {
    Program p = random_program(rng);
    FiniteStructure s = random_structure(rng, p.vocabulary(), size(1, 3));
    bool a = check_stable(p, s);
    bool b = check_stable_progression(p, s);
    bool c = eval_formula(s, build_sm_sentence(p));
    if (a != b || a != c) report("stability", to_string(p) + to_string(s));
  }
  std::cout << "stability: " << n << " programs\n";

  RandomProgramOptions normal;
  normal.max_head = 1;
  normal.max_rules = 3;
  normal.intensional = {{"p", 1}, {"q", 0}};
  int checked = 0;
  for (int i = 0; i < n / 2; ++i) {
    Program p = random_program(rng, normal);
    FiniteStructure s = random_structure(rng, p.vocabulary(), size(1, 2));
    Formula f = completion_with_singleton_guard(p);
    if (so_enumeration_size(f, s.size()) > (uint64_t(1) << 20)) continue;
    ++checked;
    if (eval_formula(s, f) != check_stable(p, s)) report("ordered completion", to_string(p) + to_string(s));
  }
  std::cout << "ordered completion: " << checked << " programs\n";

  Vocabulary e;
  e.add_predicate("e", 2);
  for (int i = 0; i < n / 4; ++i) {
    Formula f = random_normal_form_sentence(rng);
    FiniteStructure s = random_structure(rng, e, size(1, 2));
    bool truth = eval_formula(s, f);
    Translation arb = translate_so2dlp_arb(f);
    Translation fin = translate_so2dlp_fin(f);
    if (has_stable_expansion(arb.program, s, uninterpreted(arb.program, s)) != truth ||
        has_stable_expansion(fin.program, s, uninterpreted(fin.program, s)) != truth) {
      report("second-order translation", to_string(f) + "\n" + to_string(s));
    }
  }
  std::cout << "second-order translations: " << n / 4 << " sentences\n";
  std::cout << (failures ? "FAILED" : "OK") << " (seed " << o.seed << ")\n";
  return failures ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smk: stable models, ordered completion and second-order translations"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "decide whether a structure is a stable model of a program");
  check->add_option("program", o.program)->required();
  check->add_option("structure", o.structure)->required();
  check->add_flag("--why", o.why, "print the reduct and the progression trace");
  check->add_option("--cap", o.cap, "clause cap for the progression trace")->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "list the stable expansions of a structure");
  enumerate->add_option("program", o.program)->required();
  enumerate->add_option("structure", o.structure)->required();
  enumerate->add_option("--aux", o.aux, "auxiliary symbols (default: every symbol the structure lacks)")
      ->delimiter(',');
  enumerate->add_option("--cap", o.cap, "largest number of auxiliary expansions visited")
      ->check(CLI::PositiveNumber);

  auto* translate = app.add_subcommand("translate", "print a translated program or sentence");
  translate->add_option("kind", o.kind, "d2n, oc, so2dlp-suc, so2dlp-fin, so2dlp-arb, successor, finiteness")
      ->required()
      ->check(CLI::IsMember({"d2n", "oc", "so2dlp-suc", "so2dlp-fin", "so2dlp-arb", "successor", "finiteness"}));
  translate->add_option("input", o.input);
  translate->add_option("-o,--output", o.output, "output file; sidecars get .smt2 / .map appended");
  translate->add_flag("--smt", o.smt, "also emit SMT-LIB (oc)");
  translate->add_flag("--int-order", o.integer_order, "order by integer ranks in SMT-LIB output");
  translate->add_flag("--emit-mapping", o.mapping, "write the auxiliary-symbol table");
  translate->add_flag("--normalize", o.normalize, "move a second-order sentence to prenex/DNF form first");

  auto* solve = app.add_subcommand("solve", "decide stable-model existence with an SMT solver");
  solve->add_option("program", o.program)->required();
  solve->add_option("structure", o.structure)->required();
  solve->add_option("--solver", o.solver, "solver executable (default: $SMK_SOLVER)");
  solve->add_flag("--verify", o.verify, "cross-check with the built-in search");
  solve->add_option("--cap", o.cap, "largest domain size for --verify (default 3)")->check(CLI::PositiveNumber);
  solve->add_flag("--int-order", o.integer_order, "order by integer ranks");
  solve->add_option("-o,--output", o.output, "keep the SMT-LIB file");

  auto* selftest = app.add_subcommand("selftest", "randomized differential checks");
  selftest->add_option("--seed", o.seed);
  selftest->add_option("--count", o.count)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*check) return cmd_check(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*translate) return cmd_translate(o);
    if (*solve) return cmd_solve(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const SolverError& e) {
    std::cerr << "smk: " << e.what() << "\n";
    return kSolver;
  } catch (const ResourceLimit& e) {
    std::cerr << "smk: " << e.what() << "\n";
    return kCap;
  } catch (const Error& e) {
    std::cerr << "smk: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
