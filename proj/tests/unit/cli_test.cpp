#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "opradius_cli_test.out";
  const std::string cmd = std::string(OPRADIUS_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string ex(const std::string& name) { return std::string(OPRADIUS_DATA) + "/examples/" + name + ".json"; }

TEST(Cli, ComputeAdjoint) {
  const CliRun r = run("compute --space " + ex("metric_ones") + " --op " + ex("intro_T") + " --quantity adjoint");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NE(r.out.find("rows"), std::string::npos);
  (void)j;
}

TEST(Cli, RadiusOutsideMembershipExitsThree) {
  const CliRun r = run("compute --space " + ex("metric_pauli") + " --op " + ex("pauli_x") + " --quantity radius");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, CheckVerdictsAndErrors) {
  EXPECT_EQ(run("check --id QA1 --space " + ex("metric_tridiag") + " --operands " + ex("ex33_T") + "," +
                ex("ex33_S"))
                .code,
            0);
  EXPECT_EQ(run("check --id TD1.stated --space " + ex("metric_ones") + " --operands " + ex("identity2") + "," +
                ex("identity2"))
                .code,
            1);
  EXPECT_EQ(run("check --id QA1 --space " + ex("metric_tridiag") + " --operands " + ex("ex33_T")).code, 2);
  EXPECT_EQ(run("check --id NOPE --space " + ex("metric_tridiag") + " --operands " + ex("ex33_T")).code, 2);
}

TEST(Cli, ReproAndElliptic) {
  EXPECT_EQ(run("repro --case intro-adjoint").code, 0);
  EXPECT_EQ(run("repro --case pauli --format json").code, 0);
  EXPECT_EQ(run("repro --case nope").code, 2);
  EXPECT_EQ(run("elliptic --n 2").code, 2);
  const CliRun r = run("elliptic --n 4 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rhs"), std::string::npos);
}

TEST(Cli, FuzzPersistsReplayableFindings) {
  const fs::path out = fs::temp_directory_path() / "opradius_cli_findings.jsonl";
  fs::remove(out);
  const CliRun r = run("fuzz --trials 40 --dims 2..3 --seed 5 --entries TD1.stated,QA1 --format json --out " +
                    out.string());
  EXPECT_EQ(r.code, 0);
  ASSERT_TRUE(fs::exists(out));
  EXPECT_EQ(run("replay --record " + out.string()).code, 0);
  EXPECT_EQ(run("fuzz --trials 0").code, 0);
  EXPECT_EQ(run("fuzz --trials 5 --dims 3..2").code, 2);
  fs::remove(out);
}

}  // namespace
