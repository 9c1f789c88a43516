#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "pumldiff/pumldiff.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(PUMLDIFF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = synth::temp_dir("cli");
    synth::write_text(dir / "gt" / "a.puml", "@startuml\nparticipant A\nparticipant B\nA -> B : 1. hi\nB -> A : 2. ok\n@enduml\n");
    synth::write_text(dir / "cand" / "a.puml", "@startuml\nactor A\nparticipant B\nB -> A : 1. hi\nB ..> A : 2. ok\n@enduml\n");
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, CompareTable) {
  CliRun r = run("compare " + q(dir / "gt/a.puml") + " " + q(dir / "cand/a.puml"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Ground truth count"), std::string::npos);
  EXPECT_NE(r.out.find("50.00"), std::string::npos);
}

TEST_F(Cli, CompareJsonWithOptionsAfterSubcommand) {
  CliRun r = run("compare " + q(dir / "gt/a.puml") + " " + q(dir / "cand/a.puml") + " --format json --label L");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["files"][0]["file"], "L");
  EXPECT_EQ(j["aggregate"]["edge_direction"]["substitutions"].get<int>(), 1);
  EXPECT_EQ(j["aggregate"]["edge_type"]["substitutions"].get<int>(), 1);
  EXPECT_EQ(j["aggregate"]["participant"]["substitutions"].get<int>(), 0);
}

TEST_F(Cli, NoNormalizeCountsRewrites) {
  CliRun r = run("--no-normalize --format json compare " + q(dir / "gt/a.puml") + " " + q(dir / "cand/a.puml"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["aggregate"]["participant"]["substitutions"].get<int>(), 1);
}

TEST_F(Cli, EvaluateWritesOutputs) {
  CliRun r = run("evaluate " + q(dir / "gt") + " " + q(dir / "cand") + " --out " + q(dir / "out") + " --jobs 2");
  EXPECT_EQ(r.code, 0);
  for (const char* f : {"report.json", "aggregate.txt", "per_file.csv", "bins.csv"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  EXPECT_EQ(pumldiff::read_file(dir / "out" / "aggregate.txt"), r.out);
}

TEST_F(Cli, FailThreshold) {
  std::string args = "compare " + q(dir / "gt/a.puml") + " " + q(dir / "cand/a.puml");
  EXPECT_EQ(run("--fail-threshold 0.1 " + args).code, 3);
  EXPECT_EQ(run("--fail-threshold 1 " + args).code, 0);
}

TEST_F(Cli, ConfigFileAndFlagOverride) {
  synth::write_text(dir / "cfg.ini", "format=csv\ntau=0.5\n");
  std::string args = "compare " + q(dir / "gt/a.puml") + " " + q(dir / "cand/a.puml");
  CliRun csv = run("--config " + q(dir / "cfg.ini") + " " + args);
  EXPECT_EQ(csv.code, 0);
  EXPECT_TRUE(csv.out.starts_with("scope,file,category"));
  CliRun json = run("--config " + q(dir / "cfg.ini") + " --format json " + args);
  EXPECT_TRUE(json.out.starts_with("{"));
}

TEST_F(Cli, FromPatch) {
  std::string patch =
      "--- a/a.puml\n+++ b/a.puml\n@@ -4,2 +4,2 @@\n-A -> B : 1. hi\n+B -> A : 1. hi\n B -> A : 2. ok\n";
  synth::write_text(dir / "p.diff", patch);
  CliRun r = run("--format json from-patch " + q(dir / "p.diff") + " " + q(dir / "gt"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["aggregate"]["edge_direction"]["substitutions"].get<int>(), 1);
  synth::write_text(dir / "bad.diff", "--- a/zz.puml\n+++ b/zz.puml\n@@ -1 +1 @@\n-a\n+b\n");
  EXPECT_EQ(run("from-patch " + q(dir / "bad.diff") + " " + q(dir / "gt")).code, 1);
}

TEST_F(Cli, CountAndNormalize) {
  CliRun c = run("--format json count " + q(dir / "gt/a.puml"));
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["node"].get<int>(), 4);
  CliRun n = run("normalize " + q(dir / "cand/a.puml"));
  EXPECT_EQ(n.code, 0);
  EXPECT_NE(n.out.find("participant A"), std::string::npos);
  EXPECT_NE(n.out.find("B --> A"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("--tau 2 compare " + q(dir / "gt/a.puml") + " " + q(dir / "gt/a.puml")).code, 2);
  EXPECT_EQ(run("--bins 30,20 compare " + q(dir / "gt/a.puml") + " " + q(dir / "gt/a.puml")).code, 2);
  EXPECT_EQ(run("--rules nope compare " + q(dir / "gt/a.puml") + " " + q(dir / "gt/a.puml")).code, 2);
  EXPECT_EQ(run("evaluate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(CliSample, BundledSampleRuns) {
  std::string d = PUMLDIFF_SAMPLE_DIR;
  CliRun r = run("compare '" + d + "/ground_truth/attach.puml' '" + d + "/candidate/attach.puml'");
  EXPECT_EQ(r.code, 0);
  CliRun p = run("from-patch '" + d + "/attach.diff' '" + d + "/ground_truth'");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out, r.out);
}
