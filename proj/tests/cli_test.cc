// Copyright 2026 The sqlbench Authors
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

#include <sstream>

#include "cases.h"
#include "fixtures.h"
#include "sqlbench/cli.h"
#include "sqlbench/pipeline.h"

namespace sqlbench {
namespace {

using nlohmann::json;

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sqlbench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

json ErrorLine(const CliResult& r) { return json::parse(r.err); }

TEST(Cli, UsageErrorsAreConfigErrors) {
  auto r = Cli({});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(ErrorLine(r)["error"], "config");
  r = Cli({"frobnicate"});
  EXPECT_EQ(r.status, 2);
  r = Cli({"run", "--config", "/definitely/not/here.json"});
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, HelpSucceeds) {
  const auto r = Cli({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("render-prompt"), std::string::npos);
}

TEST(Cli, RenderPromptText2Sql) {
  const auto r = Cli({"render-prompt", "--db", "concert_singer", "--db-root",
                      sqlbench_test::FixtureDbRoot().string(), "--question",
                      "How many singers do we have?"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("How many singers do we have?"), std::string::npos);
  EXPECT_NE(r.out.find("singer"), std::string::npos);
}

TEST(Cli, RenderPromptAcceptsDatabaseFile) {
  const auto r = Cli({"render-prompt", "--kind", "linking-zero-shot", "--db",
                      sqlbench_test::FixtureDb("concert_singer").string(),
                      "--question", "q?"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("stadium"), std::string::npos);
}

TEST(Cli, RenderPromptErrors) {
  auto r = Cli({"render-prompt", "--kind", "nonsense"});
  EXPECT_EQ(r.status, 2);
  r = Cli({"render-prompt", "--db", "no_such_db", "--db-root",
           sqlbench_test::FixtureDbRoot().string()});
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(ErrorLine(r)["error"], "data");
}

TEST(Cli, ClassifyReportsSubcategory) {
  const std::string root = sqlbench_test::FixtureDbRoot().string();
  auto r = Cli({"classify", "--db", "concert_singer", "--db-root", root, "--pred",
                "SELECT count(*) FROM stadium", "--gold", "SELECT count(*) FROM singer"});
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["correct"], false);
  EXPECT_EQ(j["kind"], "result_error");
  EXPECT_TRUE(j.contains("subcategory"));

  r = Cli({"classify", "--db", "concert_singer", "--db-root", root, "--pred",
           "SELECT count(*) FROM singer", "--gold", "SELECT count(*) FROM singer"});
  EXPECT_EQ(json::parse(r.out)["correct"], true);

  r = Cli({"classify", "--db", "concert_singer", "--db-root", root, "--pred", "SELEC",
           "--gold", "SELECT count(*) FROM singer"});
  EXPECT_EQ(json::parse(r.out)["kind"], "system_error");
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    std::vector<BenchmarkInstance> subset(sqlbench_test::Bench50().begin(),
                                          sqlbench_test::Bench50().begin() + 5);
    sqlbench_test::WriteBirdDataset(dir / "d.json", subset);
    json cfg = {{"task", "text2sql"},
                {"run_id", "cli-run"},
                {"dataset", {{"path", "d.json"},
                             {"db_root", sqlbench_test::FixtureDbRoot().string()}}},
                {"model", EndpointToJson(sqlbench_test::StubEndpoint())},
                {"cache_dir", "cache"},
                {"output", "runs/t2s.jsonl"}};
    sqlbench_test::WriteFile(dir / "run.json", cfg.dump(2));

    // Fill the cache through the library so the CLI can run offline.
    const RunConfig config = LoadRunConfig(dir / "run.json");
    RunContext ctx;
    ctx.model = std::make_shared<LlmClient>(config.model,
                                            sqlbench_test::GoldOracleBackend(subset),
                                            std::make_shared<DiskCache>(config.cache_dir));
    ExecuteRun(config, ctx);
  }
  std::string Path(const char* name) const { return (dir / name).string(); }
  sqlbench_test::TempDir dir;
};

TEST_F(CliRun, OfflineRunValidateRescoreAndReport) {
  auto r = Cli({"validate-data", "--config", Path("run.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["instances"], 5);

  r = Cli({"run", "--config", Path("run.json"), "--offline", "--set",
           "output=runs/offline.jsonl"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(r.out)["metrics"]["ex"].get<double>(), 100.0);

  r = Cli({"rescore", "--record", Path("runs/t2s.jsonl")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["identical"], true);

  r = Cli({"report", Path("runs/t2s.jsonl"), "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("Total"), std::string::npos);
  r = Cli({"report", Path("runs/t2s.jsonl"), "--format", "yaml"});
  EXPECT_EQ(r.status, 2);
}

TEST_F(CliRun, OfflineCacheMissIsAnEndpointError) {
  const auto r = Cli({"run", "--config", Path("run.json"), "--offline", "--set",
                      "model.model_name=never-cached"});
  EXPECT_EQ(r.status, 4);
  EXPECT_EQ(ErrorLine(r)["error"], "endpoint");
}

}  // namespace
}  // namespace sqlbench
