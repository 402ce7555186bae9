#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + NFQ_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string field(const char* name) { return std::string("--field ") + NFQ_DATA_DIR + "/fields/" + name + ".json"; }

}  // namespace

TEST_CASE("invariants") {
  const Run r = run("invariants " + field("qsqrt5_half") + " --format table");
  CHECK(r.code == 0);
  CHECK(r.out.find("result.disc") != std::string::npos);
  CHECK(r.out.find("result.index") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("invariants --field /nonexistent.json").code == 2);
  CHECK(run("invariants").code == 2);
  CHECK(run("frobnicate " + field("qi")).code == 2);
  CHECK(run("verify lemma2 --trials 0 " + field("qi")).code == 2);
  CHECK(run("estimate sunit " + field("qi") + " --tau -1").code == 2);
  CHECK(run("factor " + field("qsqrt5_half") + " --element 2,0").code == 3);
  CHECK(run("factor " + field("qi") + " --element 1000036000099,0 --effort 1").code == 3);
  CHECK(run("verify periodicity " + field("qsqrt2") + " --trials 2 --unit 3,0").code == 4);
  CHECK(run("verify periodicity " + field("qsqrt2") + " --trials 50").code == 0);
  CHECK(run("factor " + field("qi") + " --ideal " + NFQ_DATA_DIR + "/ideals/qi_30.json").code == 0);
  CHECK(run("--help").code == 0);
}

TEST_CASE("same seed gives identical bytes") {
  const std::string args = "verify lemma1 " + field("qi") + " --trials 20 --seed 5";
  const Run a = run(args), b = run(args), c = run("verify lemma1 " + field("qi") + " --trials 20 --seed 6");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("environment overrides mirror flags") {
  const Run a = run("verify lemma2 " + field("qsqrt3") + " --trials 8 --seed 11");
  const Run b = run("verify lemma2 " + field("qsqrt3"), "NFQ_TRIALS=8 NFQ_SEED=11");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("estimate pip echoes its config") {
  const Run r = run("estimate pip " + field("qi") + " --element 30,0 --tau 0.001");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"config\"") != std::string::npos);
  CHECK(r.out.find("factoring log2 N(dI) + log2 N(dO)") != std::string::npos);
}
