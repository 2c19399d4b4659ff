// Copyright 2026 The kproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "kproj/kproj.hpp"

namespace kproj::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSamples = KPROJ_SAMPLES_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kproj_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                               ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ValidateText) {
  const auto r = run_cli({"validate", "--model", kSamples + "/driving/model.json"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("categories: 6\n"), std::string::npos);
  EXPECT_NE(r.out.find("  weather: 3 values\n"), std::string::npos);
  EXPECT_NE(r.out.find("clauses: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("satisfiable: true\n"), std::string::npos);
}

TEST_F(CliTest, ValidateJsonWithCombineOverride) {
  const auto r = run_cli({"validate", "--model", kSamples + "/cube/model.json",
                          "--json", "--combine", "max"});
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["combine"], "max");
  EXPECT_EQ(j["domain_sizes"]["C2"], 3);
}

TEST_F(CliTest, ValidateUnsatisfiableWarns) {
  const auto r = run_cli({"validate", "--model", kSamples + "/unsat.json"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("satisfiable: false"), std::string::npos);
  EXPECT_NE(r.err.find("unsatisfiable"), std::string::npos);
}

TEST_F(CliTest, ValidateMalformedModel) {
  std::ofstream(path("bad.json")) << "{\n  \"categories\": 3\n}\n";
  const auto r = run_cli({"validate", "--model", path("bad.json")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("line 2, column 17"), std::string::npos) << r.err;
}

TEST_F(CliTest, CoverageKProjection) {
  const auto r = run_cli({"coverage", "--model", kSamples + "/cube/model_w2.json",
                          "--data", kSamples + "/cube/data.csv", "--k", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("ratio: 5/6\n"), std::string::npos);
}

TEST_F(CliTest, CoverageFull) {
  const auto r = run_cli({"coverage", "--model", kSamples + "/cube/model_weighted.json",
                          "--data", kSamples + "/cube/data.csv", "--full", "--json"});
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coverage"], "full");
  EXPECT_EQ(j["ratio"], "1/15");
}

TEST_F(CliTest, CoverageTablesToFile) {
  const auto r = run_cli({"coverage", "--model", kSamples + "/driving/model.json",
                          "--data", kSamples + "/driving/seed.csv", "--tables",
                          "--out", path("report.txt")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  const std::string text = slurp(path("report.txt"));
  EXPECT_NE(text.find("infeasible_cells: 1\n  lanes=1,current_lane=2nd\n"),
            std::string::npos);
  EXPECT_NE(text.find("1 | #3 2/1 | X"), std::string::npos);
}

TEST_F(CliTest, TablesExcludeFull) {
  const auto r = run_cli({"coverage", "--model", kSamples + "/cube/model.json",
                          "--full", "--tables"});
  EXPECT_EQ(r.code, kExitError);
}

TEST_F(CliTest, ViolatingRowRejectedOrDropped) {
  const std::string model = kSamples + "/driving/model.json";
  const std::string data = kSamples + "/driving/invalid.csv";
  const auto rejected = run_cli({"coverage", "--model", model, "--data", data});
  EXPECT_EQ(rejected.code, kExitError);
  EXPECT_NE(rejected.err.find("line 3"), std::string::npos) << rejected.err;
  const auto dropped = run_cli(
      {"coverage", "--model", model, "--data", data, "--on-violation", "drop"});
  EXPECT_EQ(dropped.code, kExitOk);
  EXPECT_NE(dropped.err.find("dropped 1"), std::string::npos) << dropped.err;
}

TEST_F(CliTest, EnumerationLimit) {
  const auto r = run_cli({"coverage", "--model", kSamples + "/driving/model.json",
                          "--full", "--enum-limit", "10"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("limit 10"), std::string::npos) << r.err;
}

TEST_F(CliTest, GenerateWritesPointsTraceAndLp) {
  const auto r = run_cli({"generate", "--model", kSamples + "/driving/model.json",
                          "--data", kSamples + "/driving/seed.csv", "--out",
                          path("points.csv"), "--trace-out", path("trace.csv"),
                          "--lp-out", path("first.lp")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("full-coverage"), std::string::npos);

  // The generated points complete coverage of the seed.
  const std::string points = slurp(path("points.csv"));
  const std::string seed = slurp(kSamples + "/driving/seed.csv");
  std::ofstream(path("all.csv")) << seed << points.substr(points.find('\n') + 1);
  const auto check = run_cli({"coverage", "--model", kSamples + "/driving/model.json",
                              "--data", path("all.csv")});
  EXPECT_NE(check.out.find("complete: true"), std::string::npos) << check.out;

  const std::string trace = slurp(path("trace.csv"));
  EXPECT_EQ(trace.rfind("step,weather,", 0), 0u);
  EXPECT_NE(trace.find(",69,1,1.000000\n"), std::string::npos) << trace;
  const std::string lp = slurp(path("first.lp"));
  EXPECT_NE(lp.find("Maximize"), std::string::npos);
  EXPECT_NE(lp.find("Binary"), std::string::npos);
}

TEST_F(CliTest, GenerateBudgetExhausted) {
  const auto r = run_cli({"generate", "--model", kSamples + "/driving/model.json",
                          "--budget", "2", "--trace-out", path("trace.json"),
                          "--json"});
  EXPECT_EQ(r.code, kExitBudgetExhausted);
  const auto j = nlohmann::json::parse(slurp(path("trace.json")));
  EXPECT_EQ(j["reason"], "budget-exhausted");
  EXPECT_EQ(j["steps"].size(), 2u);
}

TEST_F(CliTest, GenerateOneProjectionUsesFastPath) {
  const auto r = run_cli({"generate", "--model", kSamples + "/binary4/model.json",
                          "--data", kSamples + "/binary4/data.csv", "--k", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "C1,C2,C3,C4\n0,1,0,0\n");
}

TEST_F(CliTest, IdenticalInputsGiveIdenticalOutput) {
  const std::vector<std::string> args = {
      "generate", "--model", kSamples + "/driving/model.json", "--k", "3",
      "--trace-out", path("trace.csv")};
  const auto first = run_cli(args);
  const std::string first_trace = slurp(path("trace.csv"));
  const auto second = run_cli(args);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.err, second.err);
  EXPECT_EQ(first_trace, slurp(path("trace.csv")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run_cli({"coverage"}).code, kExitError);
  EXPECT_EQ(run_cli({"coverage", "--model", path("missing.json")}).code,
            kExitError);
  EXPECT_EQ(run_cli({"coverage", "--model", kSamples + "/cube/model.json",
                     "--k", "0"})
                .code,
            kExitError);
  EXPECT_EQ(run_cli({"coverage", "--model", kSamples + "/cube/model.json",
                     "--k", "4"})
                .code,
            kExitError);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace kproj::cli
