#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(WORKBENCH_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "icq_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(CliTest, AnalyzeF6c) {
  const auto r = run("analyze --builtin f6c --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("D"), 4);
  EXPECT_EQ(j.at("deg"), 3);
  EXPECT_EQ(j.at("C"), 3);
  EXPECT_TRUE(j.contains("schema_version"));
  EXPECT_EQ(j.at("seed"), 1);
}

TEST(CliTest, AnalyzeConstant) {
  const auto r = run("analyze --builtin const0 --n 3 --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("D"), 0);
}

TEST(CliTest, AnalyzeTruthTableFile) {
  const auto path = scratch("and2.txt");
  std::ofstream(path) << "n=2\n0001\n";
  const auto r = run("analyze --fn-file " + path.string() + " --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("D"), 2);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run("--no-such-flag").code, 2);
  EXPECT_EQ(run("analyze --builtin nope").code, 2);
  EXPECT_EQ(run("demo nope").code, 2);
  EXPECT_EQ(run("analyze --fn-file /nonexistent/file.txt").code, 2);
  EXPECT_EQ(run("quantum f6q").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliTest, ProcessReports) {
  const auto r = run("process --builtin lugano_bar --computes f6c --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("valid"), true);
  EXPECT_EQ(j.at("causally_definite"), false);
  EXPECT_EQ(run("process --builtin lugano_bar --computes f6q").code, 1);
}

TEST(CliTest, DemoF6cPassesAndDetectsMutation) {
  const auto expected = scratch("expected.json");
  ASSERT_EQ(run("demo f6c --dump-expected " + expected.string()).code, 0);
  EXPECT_EQ(run("demo f6c --expect-file " + expected.string()).code, 0);
  nlohmann::json j;
  {
    std::ifstream in(expected);
    j = nlohmann::json::parse(in);
  }
  j["rows"][1]["queries"][1] = 2;
  const auto mutated = scratch("mutated.json");
  std::ofstream(mutated) << j.dump(2);
  EXPECT_EQ(run("demo f6c --expect-file " + mutated.string()).code, 1);
  std::ofstream(scratch("broken.json")) << "{";
  EXPECT_EQ(run("demo f6c --expect-file " + scratch("broken.json").string()).code, 2);
}

TEST(CliTest, DemoTablesRow) {
  const auto r = run("demo tables --row 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}

TEST(CliTest, ComposeIsSeeded) {
  const auto a = run("compose --base f6c --depth 2 --samples 200 --seed 5 --json");
  const auto b = run("compose --base f6c --depth 2 --samples 200 --seed 5 --json");
  ASSERT_EQ(a.code, 0);
  auto j = nlohmann::json::parse(a.out);
  auto k = nlohmann::json::parse(b.out);
  j.erase("seconds");
  k.erase("seconds");
  EXPECT_EQ(j, k);
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_EQ(j.at("agreed"), j.at("checked"));
}

TEST(CliTest, QuantumSingleInput) {
  const auto dir = scratch("csv");
  fs::create_directories(dir);
  const auto r = run("quantum f6q --x 100010 --csv " + dir.string() + " --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(fs::is_empty(dir));
  EXPECT_EQ(run("quantum f6q --x 10001").code, 2);
}

TEST(CliTest, SdpBuildAndVerify) {
  const auto inst = scratch("and2.dat-s");
  ASSERT_EQ(run("sdp build --f and --n 2 --T 2 --out " + inst.string()).code, 0);
  ASSERT_TRUE(fs::exists(inst));
  // All-zero candidate: infeasible, reported as a mismatch.
  nlohmann::json sol;
  sol["epsilon"] = 0.0;
  const std::vector<std::string> names{"M_0_0", "M_1_0", "M_2_0", "M_0_1", "M_1_1", "M_2_1", "Gamma_0", "Gamma_1"};
  for (const auto& n : names) sol["blocks"][n] = std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0));
  const auto path = scratch("zero.json");
  std::ofstream(path) << sol.dump();
  EXPECT_EQ(run("sdp verify --inst " + inst.string() + " --sol " + path.string()).code, 1);
  sol["blocks"].erase("Gamma_1");
  std::ofstream(path) << sol.dump();
  EXPECT_EQ(run("sdp verify --inst " + inst.string() + " --sol " + path.string()).code, 2);
}
