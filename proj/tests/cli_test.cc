#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "branchcalc/json_io.hpp"
#include "gtest/gtest.h"

namespace branchcalc {
namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(BRANCHCALC_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json result_of(const CliRun& r) { return Json::parse(r.out).at("result"); }

TEST(CliTest, EnvelopeLayout) {
  const CliRun r = run("trivial '[b(1),b(3)]'");
  ASSERT_EQ(r.exit_code, 0);
  const Json doc = Json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "config", "result"}));
  EXPECT_EQ(doc["command"], "trivial");
  EXPECT_EQ(doc["config"]["sequence"].size(), 8u);
  EXPECT_EQ(doc["result"]["decision"]["verdict"], "trivial");
}

TEST(CliTest, VerdictExitCodes) {
  EXPECT_EQ(run("trivial '[b(1),b(3)]'").exit_code, 0);
  EXPECT_EQ(run("trivial a").exit_code, 1);
  EXPECT_EQ(run("--seq 7 trivial '[[a,b],b]'").exit_code, 2);
  EXPECT_EQ(run("equal a a^8").exit_code, 0);
  EXPECT_EQ(run("equal a b").exit_code, 1);
}

TEST(CliTest, ErrorExitCodes) {
  EXPECT_EQ(run("trivial 'a**b'").exit_code, 65);
  EXPECT_EQ(run("act a 9").exit_code, 65);
  EXPECT_EQ(run("--seq 7,9 trivial a").exit_code, 78);
  EXPECT_EQ(run("--config /nonexistent/config.json trivial a").exit_code, 78);
  EXPECT_EQ(run("frobnicate").exit_code, 64);
  EXPECT_EQ(run("").exit_code, 64);
}

TEST(CliTest, ConfigFile) {
  const std::string path = ::testing::TempDir() + "branchcalc_cli_test.json";
  {
    std::ofstream out(path);
    out << R"({"sequence": ["7", "11"], "seed": 4})";
  }
  const CliRun r = run("--config " + path + " act b 1.3");
  ASSERT_EQ(r.exit_code, 0);
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["config"]["sequence"], Json::array({"7", "11"}));
  EXPECT_EQ(doc["config"]["seed"], 4);
  EXPECT_EQ(doc["result"]["image"], "1.3");
  // Flags override the file.
  EXPECT_EQ(Json::parse(run("--config " + path + " --seed 5 act a 1").out)["config"]["seed"], 5);
  std::remove(path.c_str());
}

TEST(CliTest, ConfigFromEnvironment) {
  const std::string path = ::testing::TempDir() + "branchcalc_cli_env.json";
  {
    std::ofstream out(path);
    out << R"({"seed": 42})";
  }
  const CliRun r = run("act b 2.1", "BRANCHCALC_CONFIG=" + path);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(Json::parse(r.out)["config"]["seed"], 42);
  std::remove(path.c_str());
}

TEST(CliTest, ActAndEval) {
  EXPECT_EQ(result_of(run("act a 2.1"))["image"], "3.1");
  EXPECT_EQ(result_of(run("act b 2.1"))["image"], "2.2");
  const Json p = result_of(run("--depth 1 eval b"));
  EXPECT_EQ(p["portrait"].dump(),
            R"({"level":0,"rootExp":"0","children":{"1":{"level":1,"rootExp":"0","residual":"b"},)"
            R"("2":{"level":1,"rootExp":"1","residual":"a"}}})");
  const Json d = result_of(run("--depth 1 eval --dot b"));
  EXPECT_NE(d["dot"].get<std::string>().find("digraph"), std::string::npos);
}

TEST(CliTest, Relation) {
  const CliRun r = run("relation a 'a^3'");
  EXPECT_EQ(r.exit_code, 0);
  const Json j = result_of(r);
  EXPECT_EQ(j["status"], "commuting");
  EXPECT_EQ(j["w"], "x^-1*y^-1*x*y");
  EXPECT_EQ(j["verification"]["verdict"], "trivial");
}

TEST(CliTest, GrowthCsv) {
  const CliRun r = run("growth --radius 2 --csv");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "n,gamma\n0,1\n1,5\n2,17\n");
}

TEST(CliTest, Primes) {
  EXPECT_EQ(result_of(run("primes --next 7"))["nextPrime"], "11");
}

}  // namespace
}  // namespace branchcalc
