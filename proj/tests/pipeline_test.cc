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

#include <cmath>
#include <cstdlib>

#include "cases.h"
#include "fixtures.h"
#include "sqlbench/error.h"
#include "sqlbench/executor.h"
#include "sqlbench/pipeline.h"

namespace sqlbench {
namespace {

using nlohmann::json;
using sqlbench_test::KeyedBackend;
using sqlbench_test::StubRunConfig;
using sqlbench_test::TempDir;

std::shared_ptr<LlmClient> Client(std::shared_ptr<ChatBackend> backend,
                                  const std::string& model = "stub-model") {
  return std::make_shared<LlmClient>(sqlbench_test::StubEndpoint(model), std::move(backend));
}

BenchmarkInstance Inst(std::string id, std::string db, std::string question,
                       std::string sql) {
  BenchmarkInstance i;
  i.id = std::move(id);
  i.db_id = std::move(db);
  i.question = std::move(question);
  i.gold_sql = std::move(sql);
  return i;
}

const std::string kCountQ = "How many singers do we have?";
const std::string kOverThirtyQ = "List the names of singers older than 30.";

std::vector<BenchmarkInstance> SingerPair() {
  return {Inst("a", "concert_singer", kCountQ, "SELECT count(*) FROM singer"),
          Inst("b", "concert_singer", kOverThirtyQ,
               "SELECT name FROM singer WHERE age > 30")};
}

// --- configuration -------------------------------------------------------

class ConfigFile : public ::testing::Test {
 protected:
  void Write(const json& j) { sqlbench_test::WriteFile(dir / "run.json", j.dump(2)); }
  json Base() const {
    return {{"task", "text2sql"},
            {"dataset", {{"path", "data/dev.json"}, {"db_root", "dbs"}}},
            {"model", {{"model_name", "${SQLBENCH_TEST_MODEL_NAME}"},
                       {"base_url", "http://localhost:1/v1"}}},
            {"output", "out/run.jsonl"}};
  }
  TempDir dir;
};

TEST_F(ConfigFile, ResolvesPathsEnvAndOverrides) {
  ::setenv("SQLBENCH_TEST_MODEL_NAME", "m-from-env", 1);
  Write(Base());
  const RunConfig c = LoadRunConfig(dir / "run.json", {"rounds=3", "model.temperature=0.5",
                                                       "template=DDL-HTML-Complete"});
  EXPECT_EQ(c.model.model_name, "m-from-env");
  EXPECT_EQ(c.model.temperature, 0.5);
  EXPECT_EQ(c.rounds, 3);
  EXPECT_EQ(c.template_name, "DDL-HTML-Complete");
  const auto root = std::filesystem::absolute(dir.path()).lexically_normal();
  EXPECT_EQ(c.dataset.path, root / "data/dev.json");
  EXPECT_EQ(c.dataset.db_root, root / "dbs");
  EXPECT_EQ(c.output, root / "out/run.jsonl");
  EXPECT_TRUE(c.dataset.compose.include_evidence);
  EXPECT_EQ(c.linking_methods.size(), 4u);
}

TEST_F(ConfigFile, Rejections) {
  ::setenv("SQLBENCH_TEST_MODEL_NAME", "m", 1);
  json unknown = Base();
  unknown["temprature"] = 0;
  Write(unknown);
  EXPECT_THROW(LoadRunConfig(dir / "run.json"), ConfigError);

  Write(Base());
  EXPECT_THROW(LoadRunConfig(dir / "run.json", {"noequals"}), ConfigError);
  EXPECT_THROW(LoadRunConfig(dir / "run.json", {"template=Bogus"}), ConfigError);
  EXPECT_THROW(LoadRunConfig(dir / "run.json", {"task=general_debug"}), ConfigError);
  EXPECT_THROW(LoadRunConfig(dir / "missing.json"), ConfigError);

  ::unsetenv("SQLBENCH_TEST_MODEL_NAME");
  EXPECT_THROW(LoadRunConfig(dir / "run.json"), ConfigError);
}

TEST(RunConfigJson, RoundTrips) {
  RunConfig c = StubRunConfig(Task::kSchemaLinking, "/data/d.json", "/out/r.jsonl");
  c.linking_methods = {LinkingMethod::kPreSql};
  c.fk_settings = {true};
  c.evaluator_model = sqlbench_test::StubEndpoint("judge");
  const RunConfig back = RunConfigFromJson(RunConfigToJson(c), "/");
  EXPECT_EQ(back.task, Task::kSchemaLinking);
  EXPECT_EQ(back.linking_methods, c.linking_methods);
  EXPECT_EQ(back.fk_settings, c.fk_settings);
  EXPECT_EQ(back.evaluator_model->model_name, "judge");
  EXPECT_EQ(back.timing.repetitions, 1);
  EXPECT_EQ(RunConfigToJson(back), RunConfigToJson(c));
}

TEST(ApplyOverrides, KeepsJsonTypes) {
  const json j = ApplyOverrides(json::object(), {"a.b=2", "a.c=true", "d=text", "e=[1,2]"});
  EXPECT_EQ(j["a"]["b"], 2);
  EXPECT_EQ(j["a"]["c"], true);
  EXPECT_EQ(j["d"], "text");
  EXPECT_EQ(j["e"], json::array({1, 2}));
  EXPECT_THROW(ApplyOverrides(json{{"d", 1}}, {"d.x=1"}), ConfigError);
}

TEST(InterpolateEnv, ExpandsNestedStrings) {
  ::setenv("SQLBENCH_TEST_HOST", "example", 1);
  const json j = InterpolateEnv(json{{"u", {"http://${SQLBENCH_TEST_HOST}:1/${SQLBENCH_TEST_HOST}"}}});
  EXPECT_EQ(j["u"][0], "http://example:1/example");
}

// --- text-to-SQL ----------------------------------------------------------

TEST(RunText2Sql, GoldOracleScoresPerfectlyAndStratifies) {
  TempDir dir;
  RunConfig config = StubRunConfig(Task::kText2Sql, sqlbench_test::Bench50Path(),
                                   dir / "runs" / "t2s.jsonl");
  config.parallelism = 4;
  RunContext ctx;
  ctx.model = Client(sqlbench_test::GoldOracleBackend(sqlbench_test::Bench50()));
  const RunRecord record = ExecuteRun(config, ctx);
  const json& agg = record.aggregate;
  EXPECT_EQ(agg["scored"], 50);
  EXPECT_DOUBLE_EQ(agg["ex"].get<double>(), 100.0);
  const std::vector<int> counts = {18, 20, 6, 6};
  for (size_t s = 0; s < counts.size(); ++s) {
    EXPECT_EQ(agg["strata"][s]["count"], counts[s]) << agg["strata"][s].dump();
  }
  ASSERT_EQ(record.entries.size(), 50u);
  for (size_t i = 0; i < record.entries.size(); ++i) {
    EXPECT_EQ(record.entries[i]["index"], i);
  }

  EXPECT_TRUE(std::filesystem::exists(config.output));
  EXPECT_FALSE(std::filesystem::exists(dir / "runs" / "t2s.jsonl.partial"));
  const RunRecord loaded = LoadRunRecord(config.output);
  EXPECT_EQ(loaded.aggregate, agg);
  EXPECT_EQ(loaded.entries, record.entries);
  EXPECT_EQ(AggregateEntries(Task::kText2Sql, loaded.config, loaded.entries), agg);
}

TEST(RunText2Sql, ClassifiesFailures) {
  TempDir dir;
  auto instances = SingerPair();
  instances.push_back(Inst("c", "concert_singer", "Count stadiums.",
                           "SELECT count(*) FROM stadium"));
  sqlbench_test::WriteBirdDataset(dir / "d.json", instances);
  RunConfig config = StubRunConfig(Task::kText2Sql, dir / "d.json", dir / "r.jsonl");
  RunContext ctx;
  ctx.model = Client(KeyedBackend({{kCountQ, "SELECT count(* FROM singer"},
                                   {kOverThirtyQ, "I have no idea."}},
                                  "SELECT count(*) FROM concert"));
  const RunRecord r = RunText2Sql(LoadBenchmark(config.dataset), config, ctx);
  EXPECT_EQ(r.entries[0]["error_kind"], "system");
  EXPECT_EQ(r.entries[1]["error_kind"], "system");
  EXPECT_TRUE(r.entries[1].contains("extraction_error"));
  EXPECT_EQ(r.entries[2]["error_kind"], "result");
  EXPECT_EQ(r.aggregate["system_errors"], 2);
  EXPECT_EQ(r.aggregate["result_errors"], 1);
  EXPECT_EQ(r.aggregate["extraction_failures"], 1);
  EXPECT_DOUBLE_EQ(r.aggregate["ex"].get<double>(), 0.0);
}

TEST(RunText2Sql, DataProblemsExcludeTheInstanceOnly) {
  TempDir dir;
  auto instances = SingerPair();
  instances.push_back(Inst("gone", "no_such_db", "Anything?", "SELECT 1 FROM t"));
  instances.push_back(Inst("badgold", "concert_singer", "Broken gold?",
                           "SELECT missing_column FROM singer"));
  sqlbench_test::WriteBirdDataset(dir / "d.json", instances);
  RunConfig config = StubRunConfig(Task::kText2Sql, dir / "d.json", "");
  RunContext ctx;
  ctx.model = Client(sqlbench_test::GoldOracleBackend(SingerPair()));
  const RunRecord r = RunText2Sql(LoadBenchmark(config.dataset), config, ctx);
  EXPECT_EQ(r.aggregate["scored"], 2);
  EXPECT_EQ(r.aggregate["excluded"], 2);
  EXPECT_DOUBLE_EQ(r.aggregate["ex"].get<double>(), 100.0);
  EXPECT_TRUE(r.entries[2].contains("error"));
  EXPECT_TRUE(r.entries[3].contains("error"));
}

TEST(RunText2Sql, EndpointFailureAbortsTheRun) {
  TempDir dir;
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  RunConfig config = StubRunConfig(Task::kText2Sql, dir / "d.json", dir / "r.jsonl");
  RunContext ctx;
  ctx.model = Client(std::make_shared<FunctionBackend>(
      [](const ChatRequest&) { return HttpReply{401, "unauthorized"}; }));
  EXPECT_THROW(RunText2Sql(LoadBenchmark(config.dataset), config, ctx), EndpointError);
  EXPECT_FALSE(std::filesystem::exists(dir / "r.jsonl"));
}

// --- debugging ------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> DebugScript() {
  return {
      // Broken SQL from the first pass, keyed before the questions.
      {"SELECT count(* FROM singer", "SELECT count(*) FROM singer"},
      {"SELECT name FROM singer WHERE age > 30 AND", "SELECT name FROM singer WHERE age > 40"},
      {"SELECT name FROM singer WHERE age > 40", "SELECT name FROM singer WHERE age > 30"},
      {kCountQ, "SELECT count(* FROM singer"},
      {kOverThirtyQ, "SELECT name FROM singer WHERE age > 30 AND"},
  };
}

RunRecord PriorRun(const TempDir& dir) {
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  RunConfig config = StubRunConfig(Task::kText2Sql, dir / "d.json", dir / "prior.jsonl");
  RunContext ctx;
  ctx.model = Client(KeyedBackend(DebugScript()));
  return RunText2Sql(LoadBenchmark(config.dataset), config, ctx);
}

TEST(RunSelfDebug, TracksPerRoundTrajectory) {
  TempDir dir;
  const RunRecord prior = PriorRun(dir);
  ASSERT_EQ(prior.aggregate["system_errors"], 2);

  RunConfig config = StubRunConfig(Task::kSelfDebug, dir / "d.json", dir / "debug.jsonl");
  config.prior_record = dir / "prior.jsonl";
  config.rounds = 2;
  RunContext ctx;
  ctx.model = Client(KeyedBackend(DebugScript()));
  const RunRecord r = ExecuteRun(config, ctx);
  const json& s = r.aggregate["strategies"][0];
  EXPECT_EQ(s["strategy"], DebugStrategyName(DebugStrategy::kWrongSqlAllComment));
  EXPECT_EQ(s["trajectory"], json::array({0.0, 50.0, 100.0}));
  EXPECT_EQ(s["system_errors"], json::array({2, 0, 0}));
  EXPECT_EQ(s["result_errors"], json::array({0, 1, 0}));
  EXPECT_EQ(s["fixed"], 2);

  const json& b = r.entries[1]["strategies"][s["strategy"].get<std::string>()];
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0]["diagnosis"]["kind"], "system");
  EXPECT_EQ(b[1]["diagnosis"]["kind"], "result");
  EXPECT_TRUE(b[1]["correct"].get<bool>());
}

TEST(RunSelfDebug, RegenerateReissuesTheOriginalPrompt) {
  TempDir dir;
  const RunRecord prior = PriorRun(dir);
  RunConfig config = StubRunConfig(Task::kSelfDebug, dir / "d.json", "");
  config.strategies = {DebugStrategy::kRegenerate};
  config.prior_record = dir / "prior.jsonl";
  RunContext ctx;
  ctx.model = Client(KeyedBackend(DebugScript()));
  const RunRecord r = RunSelfDebug(LoadBenchmark(config.dataset), prior, config, ctx);
  const json& a = r.entries[0]["strategies"]["regenerate"][0];
  EXPECT_EQ(a["prompt_digest"], prior.entries[0]["prompt_digest"]);
  EXPECT_FALSE(a["correct"].get<bool>());
}

TEST(RunGeneralDebug, RequiresADifferentDebugger) {
  TempDir dir;
  const RunRecord prior = PriorRun(dir);
  RunConfig config = StubRunConfig(Task::kGeneralDebug, dir / "d.json", "");
  config.prior_record = dir / "prior.jsonl";
  config.debugger_model = sqlbench_test::StubEndpoint();
  RunContext ctx;
  const Benchmark data = LoadBenchmark(config.dataset);
  EXPECT_THROW(RunGeneralDebug(data, prior, config, ctx), ConfigError);

  config.debugger_model = sqlbench_test::StubEndpoint("other-model");
  ctx.debugger = Client(KeyedBackend(DebugScript()), "other-model");
  const RunRecord r = RunGeneralDebug(data, prior, config, ctx);
  EXPECT_EQ(r.task, Task::kGeneralDebug);
  EXPECT_EQ(r.aggregate["strategies"][0]["trajectory"][1], 50.0);
}

TEST(RunSelfDebug, RejectsNonText2SqlPrior) {
  TempDir dir;
  RunRecord prior = PriorRun(dir);
  prior.task = Task::kSql2Text;
  RunConfig config = StubRunConfig(Task::kSelfDebug, dir / "d.json", "");
  RunContext ctx;
  ctx.model = Client(KeyedBackend(DebugScript()));
  EXPECT_THROW(RunSelfDebug(LoadBenchmark(config.dataset), prior, config, ctx), ConfigError);
}

// --- optimization -----------------------------------------------------------

TEST(RunOptimization, StepClockGivesUnitRatios) {
  TempDir dir;
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  for (auto mode : {OptimizationMode::kTwoStage, OptimizationMode::kDirect}) {
    RunConfig config = StubRunConfig(Task::kOptimization, dir / "d.json", "");
    config.optimization_mode = mode;
    StepClock clock(std::chrono::milliseconds(10));
    RunContext ctx;
    ctx.clock = &clock;
    ctx.model = Client(sqlbench_test::GoldOracleBackend(SingerPair()));
    const RunRecord r = RunOptimization(LoadBenchmark(config.dataset), config, ctx);
    const json& opt = r.aggregate["optimized"];
    EXPECT_DOUBLE_EQ(opt["ex"].get<double>(), 100.0);
    EXPECT_DOUBLE_EQ(opt["ves"].get<double>(), 100.0);
    EXPECT_DOUBLE_EQ(opt["cves"].get<double>(), 100.0);
    EXPECT_EQ(r.aggregate.contains("baseline"), mode == OptimizationMode::kTwoStage);
  }
}

TEST(RunOptimization, NothingCorrectLeavesCvesUndefined) {
  TempDir dir;
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  RunConfig config = StubRunConfig(Task::kOptimization, dir / "d.json", "");
  RunContext ctx;
  ctx.model = Client(KeyedBackend({}, "SELECT 0"));
  const RunRecord r = RunOptimization(LoadBenchmark(config.dataset), config, ctx);
  EXPECT_DOUBLE_EQ(r.aggregate["optimized"]["ves"].get<double>(), 0.0);
  EXPECT_TRUE(r.aggregate["optimized"]["cves"].is_null());
}

// --- SQL-to-text ------------------------------------------------------------

TEST(RunSql2Text, ScoresRougeAndConsistency) {
  TempDir dir;
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  RunConfig config = StubRunConfig(Task::kSql2Text, dir / "d.json", "");
  RunContext ctx;
  ctx.model = Client(KeyedBackend({{"count(*)", "Question: " + kCountQ}},
                                  "Question: which singers are old"));
  ctx.evaluator = Client(KeyedBackend({}, "True"), "judge");
  const RunRecord r = RunSql2Text(LoadBenchmark(config.dataset), config, ctx);
  EXPECT_DOUBLE_EQ(r.entries[0]["rouge"]["rouge1"].get<double>(), 1.0);
  EXPECT_LT(r.entries[1]["rouge"]["rouge1"].get<double>(), 1.0);
  EXPECT_EQ(r.aggregate["scored"], 2);
  EXPECT_DOUBLE_EQ(r.aggregate["consistency_rate"].get<double>(), 100.0);
}

// --- schema linking ---------------------------------------------------------

TEST(RunSchemaLinking, FillsEveryMethodAndKeySetting) {
  TempDir dir;
  sqlbench_test::WriteBirdDataset(dir / "d.json", SingerPair());
  RunConfig config = StubRunConfig(Task::kSchemaLinking, dir / "d.json", "");
  RunContext ctx;
  ctx.model = Client(KeyedBackend({}, "SELECT count(*) FROM singer\n\nTables: [singer, concert]"));
  const RunRecord r = RunSchemaLinking(LoadBenchmark(config.dataset), config, ctx);
  const json& cells = r.aggregate["cells"];
  ASSERT_EQ(cells.size(), 8u);
  for (const auto& cell : cells) {
    EXPECT_EQ(cell["count"], 2) << cell.dump();
    const std::string method = cell["method"];
    if (method == "presql") {
      EXPECT_DOUBLE_EQ(cell["exact_match"].get<double>(), 1.0);
      EXPECT_DOUBLE_EQ(cell["res"].get<double>(), 1.0);
    } else {
      EXPECT_DOUBLE_EQ(cell["exact_match"].get<double>(), 0.0);
      EXPECT_DOUBLE_EQ(cell["subset_match"].get<double>(), 1.0);
      EXPECT_DOUBLE_EQ(cell["res"].get<double>(), std::sqrt(0.5));
    }
  }
}

// --- reporting --------------------------------------------------------------

TEST(ScoreAndReport, RendersAllFormats) {
  TempDir dir;
  const RunRecord prior = PriorRun(dir);
  const std::string md = ScoreAndReport(prior, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("| Total"), std::string::npos) << md;
  const std::string csv = ScoreAndReport(prior, ReportFormat::kCsv);
  EXPECT_NE(csv.find(','), std::string::npos);
  const json j = json::parse(ScoreAndReport(prior, ReportFormat::kJson));
  EXPECT_EQ(j["metrics"]["ex"], prior.aggregate["ex"]);
  EXPECT_THROW(ParseReportFormat("pdf"), ConfigError);
}

TEST(LoadRunRecord, RejectsBrokenFiles) {
  TempDir dir;
  sqlbench_test::WriteFile(dir / "bad.jsonl", "{\"type\":\"entry\",\"index\":0}\n");
  EXPECT_THROW(LoadRunRecord(dir / "bad.jsonl"), DataError);
  sqlbench_test::WriteFile(dir / "worse.jsonl", "not json\n");
  EXPECT_THROW(LoadRunRecord(dir / "worse.jsonl"), DataError);
  EXPECT_THROW(LoadRunRecord(dir / "absent.jsonl"), DataError);
}

}  // namespace
}  // namespace sqlbench
