// Runs the smk executable against the fixtures. Set SMK_UPDATE_GOLDEN=1 to
// rewrite the golden files instead of comparing.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "smk/completion.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_smk(const std::string& args, const std::string& env = "") {
  std::string cmd = "cd " SMK_FIXTURES " && " + env + " " SMK_BIN " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("smk_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void golden(const std::string& name, const std::string& actual) {
  fs::path path = fs::path(SMK_GOLDEN) / name;
  if (std::getenv("SMK_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  REQUIRE_MESSAGE(fs::exists(path), "missing golden " << name);
  CHECK_MESSAGE(read(path) == actual, "golden mismatch: " << name);
}

bool have_z3() { return std::system("command -v z3 >/dev/null 2>&1") == 0; }

}  // namespace

TEST_CASE("check") {
  Run stable = run_smk("check reach.lp reach_stable.st");
  CHECK(stable.code == 0);
  CHECK(stable.out == "STABLE\n");
  CHECK(run_smk("check odd.lp odd.st").code == 1);
  CHECK(run_smk("check missing.lp odd.st").code == 2);
  CHECK(run_smk("check reach.lp").code == 2);

  Run why = run_smk("check reach.lp reach_unsupported.st --why");
  CHECK(why.code == 1);
  golden("check_why_reach.txt", why.out);
}

TEST_CASE("check reports parse errors with a position") {
  fs::path dir = scratch();
  std::ofstream(dir / "bad.lp") << "p(X) :-\n  q(X) r(X).\n";
  Run r = run_smk("check " + (dir / "bad.lp").string() + " odd.st");
  CHECK(r.code == 2);
  CHECK(r.out.find("bad.lp:2:") != std::string::npos);
}

TEST_CASE("enumerate") {
  Run two = run_smk("enumerate successor.lp domain2.st");
  CHECK(two.code == 0);
  CHECK(two.out.find("count: 2\n") != std::string::npos);
  golden("enumerate_successor2.txt", two.out);
  Run six = run_smk("enumerate successor.lp domain3.st");
  CHECK(six.code == 0);
  CHECK(six.out.substr(six.out.size() - 9) == "count: 6\n");
  Run none = run_smk("enumerate unsat.lp domain2.st");
  CHECK(none.code == 0);
  CHECK(none.out == "count: 0\n");

  Run capped = run_smk("enumerate example1.lp bare3.st --cap 5");
  CHECK(capped.code == 3);
  CHECK(capped.out.find("(partial)") != std::string::npos);
  CHECK(run_smk("enumerate example1.lp bare3.st --cap 0").code == 2);
  CHECK(run_smk("enumerate example1.lp path3.st --aux nothere").code == 2);

  Run path = run_smk("enumerate example1.lp path3.st --aux s,t");
  CHECK(path.code == 0);
  golden("enumerate_example1_path3.txt", path.out);
}

TEST_CASE("translate") {
  fs::path dir = scratch();
  Run d2n = run_smk("translate d2n example1.lp -o " + (dir / "d2n").string() + " --emit-mapping");
  CHECK(d2n.code == 0);
  golden("d2n_example1.lp", read(dir / "d2n"));
  golden("d2n_example1.map", read(dir / "d2n.map"));
  golden("d2n_example3.lp", run_smk("translate d2n example3.lp").out);

  golden("successor.lp", run_smk("translate successor").out);
  golden("finiteness.lp", run_smk("translate finiteness").out);

  Run oc = run_smk("translate oc reach.lp --smt --emit-mapping -o " + (dir / "oc").string());
  CHECK(oc.code == 0);
  golden("oc_reach.txt", read(dir / "oc"));
  golden("oc_reach.smt2", read(dir / "oc.smt2"));
  golden("oc_reach.map", read(dir / "oc.map"));
  CHECK(smk::check_smtlib(read(dir / "oc.smt2")) == "");
  CHECK(run_smk("translate oc example1.lp").code == 2);

  for (const char* kind : {"suc", "fin", "arb"}) {
    std::string k = kind;
    Run r = run_smk("translate so2dlp-" + k + " coloring.fo --emit-mapping -o " + (dir / k).string());
    CHECK(r.code == 0);
    golden("so2dlp_" + k + "_coloring.lp", read(dir / k));
    golden("so2dlp_" + k + "_coloring.map", read(dir / (k + ".map")));
  }
  golden("so2dlp_arb_two_blocks.lp", run_smk("translate so2dlp-arb two_blocks.fo").out);
  Run parity = run_smk("translate so2dlp-suc parity1.fo --normalize");
  CHECK(parity.code == 0);
  golden("so2dlp_suc_parity1.lp", parity.out);
  CHECK(run_smk("translate so2dlp-suc parity1.fo").code == 2);

  Run prefix = run_smk("translate so2dlp-suc wrong_prefix.fo");
  CHECK(prefix.code == 2);
  CHECK(prefix.out.find("ALL* SOME*") != std::string::npos);
  Run blocks = run_smk("translate so2dlp-fin wrong_blocks.fo");
  CHECK(blocks.code == 2);
  CHECK(blocks.out.find("EX* ALL*") != std::string::npos);
  Run dnf = run_smk("translate so2dlp-arb not_dnf.fo");
  CHECK(dnf.code == 2);
  CHECK(dnf.out.find("disjunctive normal form") != std::string::npos);

  CHECK(run_smk("translate d2n").code == 2);
  CHECK(run_smk("translate nonsense example1.lp").code == 2);
  CHECK(run_smk("translate d2n example1.lp --emit-mapping").code == 2);
}

TEST_CASE("translation output is stable across runs") {
  for (const char* args : {"translate d2n example1.lp", "translate oc reach.lp --smt",
                           "translate so2dlp-fin coloring.fo", "enumerate successor.lp domain3.st"}) {
    CHECK(run_smk(args).out == run_smk(args).out);
  }
}

TEST_CASE("solve") {
  CHECK(run_smk("solve reach.lp reach_e12.st", "env -u SMK_SOLVER").code == 4);
  CHECK(run_smk("solve reach.lp reach_e12.st --solver /nonexistent/solver").code == 4);
  if (!have_z3()) {
    MESSAGE("z3 not found; solver round trips skipped");
    return;
  }
  Run sat = run_smk("solve reach.lp reach_e12.st --solver z3 --verify");
  CHECK(sat.code == 0);
  CHECK(sat.out == "SAT\nverify: agrees\n");
  Run unsat = run_smk("solve reach.lp reach_empty.st --verify", "SMK_SOLVER=z3");
  CHECK(unsat.code == 1);
  CHECK(unsat.out == "UNSAT\nverify: agrees\n");
  Run ints = run_smk("solve reach.lp reach_e12.st --solver z3 --int-order --verify");
  CHECK(ints.code == 0);
  CHECK(ints.out == "SAT\nverify: agrees\n");
  Run single = run_smk("solve odd.lp odd.st --solver z3 --verify");
  CHECK(single.code == 1);
  CHECK(single.out == "UNSAT\nverify: agrees\n");
}

TEST_CASE("selftest") {
  Run r = run_smk("selftest --seed 3 --count 40");
  CHECK(r.code == 0);
  CHECK(r.out.find("OK (seed 3)") != std::string::npos);
  CHECK(run_smk("selftest --seed 3 --count 40").out == r.out);
}
