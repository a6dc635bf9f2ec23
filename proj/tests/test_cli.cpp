#include "ltk/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is merged into the captured output
// when `merge` is set.
CliRun ltk_run(const std::string& args, const std::string& stdin_text = "", bool merge = false) {
  std::string cmd;
  if (!stdin_text.empty()) cmd = "printf '%s' '" + stdin_text + "' | ";
  cmd += std::string(LTK_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kDemo = LTK_DEMO_DIR;

}  // namespace

TEST(Cli, RhoOfWorkedExample) {
  const CliRun r = ltk_run("rho --in " + kDemo + "/worked_example.json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(ltk::json::parse(r.out)["rho"].get<double>(), 4.0 / 3.0, 1e-9);
}

TEST(Cli, ClosedOnIsotropicColumn) {
  const CliRun r = ltk_run("closed --in " + kDemo + "/isotropic_column.json");
  ASSERT_EQ(r.code, 0);
  const auto j = ltk::json::parse(r.out);
  EXPECT_EQ(j["closed"], false);
  EXPECT_EQ(j["span"], 1);
  EXPECT_EQ(j["gram_rank"], 0);
}

TEST(Cli, ReadsStdin) {
  const CliRun r = ltk_run("eta --in -", R"({"n":2,"N":1,"re":[[0],[1],[0]],"im":[[1],[0],[1]]})");
  ASSERT_EQ(r.code, 0);
  const auto e = ltk::json::parse(r.out)["eta"][0];
  EXPECT_EQ(e["re"], -1.0);
  EXPECT_EQ(e["im"], 0.0);
}

TEST(Cli, MalformedInputNamesField) {
  const CliRun r = ltk_run("rho --in -", R"({"n":2,"N":1,"re":[[1],[0],[0]]})", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("\"im\""), std::string::npos);
  EXPECT_EQ(ltk_run("rho --in -", "{not json").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(ltk_run("").code, 2);
  EXPECT_EQ(ltk_run("frobnicate").code, 2);
  EXPECT_EQ(ltk_run("verify no-such-suite").code, 2);
  EXPECT_EQ(ltk_run("bounds").code, 2);
  EXPECT_EQ(ltk_run("--help").code, 0);
}

TEST(Cli, DomainErrorIsUsage) {
  const CliRun r = ltk_run("rho --in -", R"({"n":1,"N":1,"re":[[0],[0]],"im":[[0],[1]]})");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, RankWarningEscalates) {
  const CliRun r = ltk_run("rank --in -", R"({"n":2,"N":2,"re":[[1,0],[0,5e-9],[0,0]],"im":[[0,0],[0,0],[0,0]]})");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(ltk::json::parse(r.out)["warning"], true);
}

TEST(Cli, DegenerateSplitEscalates) {
  EXPECT_EQ(ltk_run("degenerate --in " + kDemo + "/isotropic_column.json").code, 3);
  const CliRun r = ltk_run("degenerate --t 0 --in " + kDemo + "/worked_example.json");
  ASSERT_EQ(r.code, 0);
  const auto j = ltk::json::parse(r.out);
  EXPECT_EQ(j["radical_dimension"], 1);
  EXPECT_NEAR(j["rho_u"].get<double>(), 1.25, 1e-12);
  EXPECT_EQ(j["gamma_in_tube"], true);
}

TEST(Cli, FailedAuditExitsOne) {
  EXPECT_EQ(ltk_run("audit-exhaustion --r 1e-6 --samples 200").code, 1);
}

TEST(Cli, BoundsAndPairConstant) {
  const CliRun r = ltk_run("bounds --M 2 --M2 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(ltk::json::parse(r.out)["pair_mixed_max"], 3.0);
}

TEST(Cli, ReportsAreDeterministicUpToTimestamp) {
  for (const std::string args : {"verify levi --samples 50 --seed 3", "minimize --seed 9 --n 3 --N 2 --json",
                                 "path --variant H1 --seed 4 --json", "certify --seed 2 --json"}) {
    const CliRun a = ltk_run(args), b = ltk_run(args);
    ASSERT_EQ(a.code, 0) << args;
    auto ja = ltk::json::parse(a.out), jb = ltk::json::parse(b.out);
    EXPECT_TRUE(ja.contains("timestamp"));
    EXPECT_EQ(ja["seed"], ja["seed"]);
    ja.erase("timestamp");
    jb.erase("timestamp");
    EXPECT_EQ(ja.dump(), jb.dump()) << args;
  }
}

TEST(Cli, VerifyAllMatchesIndividualSuites) {
  const std::string opts = " --samples 20 --seed 11";
  const CliRun all = ltk_run("verify all" + opts);
  ASSERT_TRUE(all.code == 0 || all.code == 1);
  const auto res = ltk::json::parse(all.out)["result"];
  bool conj = true;
  for (const auto& s : res["suites"]) {
    const std::string name = s["suite"];
    const CliRun one = ltk_run("verify " + name + opts);
    EXPECT_EQ(one.code, s["passed"].get<bool>() ? 0 : 1) << name;
    const auto r = ltk::json::parse(one.out)["result"]["suites"][0];
    EXPECT_EQ(r.dump(), s.dump()) << name;
    conj = conj && r["passed"].get<bool>();
  }
  EXPECT_EQ(res["passed"].get<bool>(), conj);
  EXPECT_EQ(all.code, conj ? 0 : 1);
}
