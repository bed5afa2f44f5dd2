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


#include "cases.h"

#include <mutex>

#include "fixtures.h"
#include "sqlbench/classifier.h"
#include "sqlbench/executor.h"

namespace sqlbench_test {

using sqlbench::ErrorSubcategory;

const std::vector<ExCase>& ExSemanticsCases() {
  static const std::vector<ExCase> cases = {
      {"row order permuted, gold unordered", "concert_singer",
       "SELECT Name FROM singer ORDER BY Singer_ID DESC", "SELECT name FROM singer", true},
      {"order by direction violated", "concert_singer",
       "SELECT name, age FROM singer ORDER BY age ASC",
       "SELECT name, age FROM singer ORDER BY age DESC", false},
      {"float perturbed by 1e-7", "concert_singer",
       "SELECT avg(age) + 1e-7 FROM singer WHERE country = 'France'",
       "SELECT avg(age) FROM singer WHERE country = 'France'", true},
      {"float perturbed by 1e-3", "concert_singer",
       "SELECT avg(age) + 0.001 FROM singer WHERE country = 'France'",
       "SELECT avg(age) FROM singer WHERE country = 'France'", false},
      {"engine error on unknown column", "concert_singer", "SELECT nme FROM singer",
       "SELECT name FROM singer", false},
      {"syntax error", "concert_singer", "SELEC name FROM singer",
       "SELECT name FROM singer", false},
      {"count of key equals count star", "concert_singer",
       "SELECT COUNT(Singer_ID) FROM singer", "SELECT count(*) FROM singer", true},
      {"column order swapped", "concert_singer", "SELECT country, name FROM singer",
       "SELECT name, country FROM singer", false},
      {"duplicates kept where gold is distinct", "concert_singer",
       "SELECT country FROM singer", "SELECT DISTINCT country FROM singer", false},
      {"real equals integer", "concert_singer",
       "SELECT CAST(count(*) AS REAL) FROM singer", "SELECT count(*) FROM singer", true},
      {"text never equals number", "concert_singer",
       "SELECT CAST(count(*) AS TEXT) FROM singer", "SELECT count(*) FROM singer", false},
      {"both empty", "concert_singer", "SELECT name FROM singer WHERE age > 100",
       "SELECT name FROM singer WHERE age > 200", true},
      {"empty versus rows", "concert_singer", "SELECT name FROM singer WHERE age > 100",
       "SELECT name FROM singer WHERE age > 30", false},
      {"write statement rejected", "concert_singer", "DELETE FROM singer",
       "SELECT count(*) FROM singer", false},
      {"aliases do not matter under order by", "concert_singer",
       "SELECT T1.name FROM singer AS T1 ORDER BY T1.age DESC",
       "SELECT name FROM singer ORDER BY age DESC", true},
      {"storage order where gold is ordered", "concert_singer", "SELECT name FROM singer",
       "SELECT name FROM singer ORDER BY age DESC", false},
      {"equivalent grouping key", "concert_singer",
       "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = "
       "T2.stadium_id GROUP BY T2.name",
       "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = "
       "T2.stadium_id GROUP BY T1.stadium_id",
       true},
      {"null differs from empty text", "concert_singer", "SELECT NULL", "SELECT ''", false},
      {"two statements rejected", "concert_singer",
       "SELECT count(*) FROM singer; SELECT 1", "SELECT count(*) FROM singer", false},
      {"not in equals not exists", "department_management",
       "SELECT count(*) FROM department WHERE department_id NOT IN (SELECT department_id "
       "FROM management)",
       "SELECT count(*) FROM department WHERE NOT EXISTS (SELECT 1 FROM management AS m "
       "WHERE m.department_id = department.department_id)",
       true},
  };
  return cases;
}

namespace {

constexpr const char* kStadiumCount =
    "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = "
    "T2.stadium_id GROUP BY T1.stadium_id";
constexpr const char* kSingerJoin =
    "SELECT T2.name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.singer_id = "
    "T2.singer_id";

}  // namespace

const std::vector<ClassifierCase>& ClassifierRuleCases() {
  static const std::vector<ClassifierCase> cases = {
      {"extra joined table", "concert_singer",
       "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = "
       "T2.stadium_id JOIN singer_in_concert AS T3 ON T1.concert_id = T3.concert_id GROUP "
       "BY T1.stadium_id",
       kStadiumCount, ErrorSubcategory::kExcessiveTables},
      {"join dropped", "concert_singer",
       "SELECT stadium_id, count(*) FROM concert GROUP BY stadium_id", kStadiumCount,
       ErrorSubcategory::kMissingTables},
      {"unrelated table", "concert_singer", "SELECT name FROM stadium WHERE capacity > 30",
       "SELECT name FROM singer WHERE age > 30", ErrorSubcategory::kIncorrectTables},
      {"both tables replaced", "concert_singer",
       "SELECT T2.name FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = "
       "T2.stadium_id",
       kSingerJoin, ErrorSubcategory::kIncorrectTables},
      {"table check outranks columns", "concert_singer",
       "SELECT T1.name, T2.theme FROM singer AS T1 JOIN concert AS T2 ON T1.singer_id = "
       "T2.concert_id",
       "SELECT name FROM singer", ErrorSubcategory::kExcessiveTables},
      {"extra result column", "concert_singer",
       "SELECT name, country FROM singer WHERE age > 40",
       "SELECT name FROM singer WHERE age > 40", ErrorSubcategory::kExcessiveColumns},
      {"extra qualified result column", "concert_singer",
       "SELECT T1.name, T1.age FROM singer AS T1 WHERE T1.country = 'France'",
       "SELECT name FROM singer WHERE country = 'France'",
       ErrorSubcategory::kExcessiveColumns},
      {"column check outranks join", "concert_singer",
       "SELECT T2.name, T2.capacity, count(*) FROM concert AS T1 JOIN stadium AS T2 ON "
       "T1.year = T2.stadium_id GROUP BY T1.stadium_id",
       kStadiumCount, ErrorSubcategory::kExcessiveColumns},
      {"result column dropped", "concert_singer",
       "SELECT name, age FROM singer ORDER BY age DESC",
       "SELECT name, country, age FROM singer ORDER BY age DESC",
       ErrorSubcategory::kMissingColumns},
      {"administrator names cut short", "california_schools",
       "SELECT T1.AdmFName1 ,  T1.AdmLName1 FROM schools AS T1 JOIN satscores AS T2 ON "
       "T1.CDSCode = T2.cds WHERE T2.NumTstTakr = ( SELECT NumTstTakr FROM satscores GROUP "
       "BY cds HAVING NumGE1500  >=  1500 ORDER BY NumTstTakr DESC LIMIT 1 )",
       "SELECT T2.AdmFName1, T2.AdmLName1, T2.AdmFName2, T2.AdmLName2, T2.AdmFName3, "
       "T2.AdmLName3 FROM satscores AS T1 INNER JOIN schools AS T2 ON T1.cds = T2.CDSCode "
       "ORDER BY T1.NumGE1500 DESC LIMIT 1",
       ErrorSubcategory::kMissingColumns},
      {"wrong result column", "concert_singer",
       "SELECT song_name FROM singer WHERE age > 40",
       "SELECT name FROM singer WHERE age > 40", ErrorSubcategory::kIncorrectColumns},
      {"both result columns wrong", "concert_singer",
       "SELECT location, highest FROM stadium ORDER BY average DESC LIMIT 1",
       "SELECT name ,  capacity FROM stadium ORDER BY average DESC LIMIT 1",
       ErrorSubcategory::kIncorrectColumns},
      {"join on the wrong key", "concert_singer",
       "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.concert_id = "
       "T2.stadium_id GROUP BY T1.stadium_id",
       kStadiumCount, ErrorSubcategory::kJoinColumns},
      {"join through the wrong bridge column", "concert_singer",
       "SELECT T2.name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.concert_id = "
       "T2.singer_id",
       kSingerJoin, ErrorSubcategory::kJoinColumns},
      {"filter flipped without a model", "concert_singer",
       "SELECT name FROM singer WHERE age < 40", "SELECT name FROM singer WHERE age > 40",
       ErrorSubcategory::kConditionFilter},
  };
  return cases;
}

const std::vector<std::string>& PublishedComments() {
  static const std::vector<std::string> comments = {
      "The tables you inquired about is incorrect, you query too much tables.",
      "The tables you inquired about is incorrect, you need to query more tables.",
      "The tables you inquired about is incorrect.",
      "You have found the correct tables. But you select wrong columns,you select too much "
      "Columns.",
      "You have found the correct tables. But you select wrong columns,you need to select "
      "more Columns.",
      "You have found the correct tables.But you select wrong columns.",
      "You have found the correct tables. You have selected the correct Columns. But you "
      "combine wrong rows when JOIN two tables.",
      "You have found the correct tables.You have selected the correct Columns. You have "
      "combined (JOIN) the correct tables. But an error occurred in the conditional filter.",
      "You have found the correct tables. You have selected the correct Columns. You have "
      "combined (JOIN) the correct tables. You have used the correct conditional filtering. "
      "But there was an error in your processing of the data.",
  };
  return comments;
}

std::filesystem::path Bench50Path() { return FixtureFile("bench50.json"); }

const std::vector<sqlbench::BenchmarkInstance>& Bench50() {
  static const auto instances =
      sqlbench::LoadInstances(Bench50Path(), sqlbench::DatasetFormat::kBirdJson);
  return instances;
}

const sqlbench::BenchmarkInstance& Bench50At(size_t index) { return Bench50().at(index); }

namespace {

constexpr size_t kHowManySingers = 0;
constexpr size_t kSingersByAge = 1;
constexpr size_t kHighestAttendance = 3;
constexpr size_t kSatAdministrators = 27;
constexpr size_t kQueensParkRangers = 37;

sqlbench::RenderedPrompt Text2Sql(size_t index, const char* template_name) {
  const auto& inst = Bench50At(index);
  return sqlbench::RenderText2Sql(FixtureCatalog(inst.db_id), sqlbench::ComposeQuestion(inst),
                                  sqlbench::TemplateSpec::FromName(template_name));
}

GoldenCase Text2SqlCase(const char* file, size_t index, const char* template_name) {
  return {file, [=] { return Text2Sql(index, template_name); }};
}

}  // namespace

const std::vector<GoldenCase>& PromptGoldenCases() {
  static const std::vector<GoldenCase> cases = {
      Text2SqlCase("text2sql_simpleddl_md_chat_full.txt", kHowManySingers, "SimpleDDL-MD-Chat"),
      Text2SqlCase("text2sql_ddl_html_chat.txt", kHowManySingers, "DDL-HTML-Chat"),
      Text2SqlCase("text2sql_ddl_html_complete.txt", kHowManySingers, "DDL-HTML-Complete"),
      Text2SqlCase("text2sql_simpleddl_html_chat.txt", kHowManySingers, "SimpleDDL-HTML-Chat"),
      Text2SqlCase("text2sql_simpleddl_html_complete.txt", kHowManySingers,
                   "SimpleDDL-HTML-Complete"),
      Text2SqlCase("text2sql_ddl_md_chat.txt", kHowManySingers, "DDL-MD-Chat"),
      Text2SqlCase("text2sql_ddl_md_complete.txt", kHowManySingers, "DDL-MD-Complete"),
      Text2SqlCase("text2sql_simpleddl_md_chat.txt", kHowManySingers, "SimpleDDL-MD-Chat"),
      Text2SqlCase("text2sql_simpleddl_md_complete.txt", kHowManySingers,
                   "SimpleDDL-MD-Complete"),
      Text2SqlCase("text2sql_ddl_coding_chat.txt", kSingersByAge, "DDL-Coding-Chat"),
      Text2SqlCase("text2sql_ddl_coding_complete.txt", kSingersByAge, "DDL-Coding-Complete"),
      Text2SqlCase("text2sql_simpleddl_coding_chat.txt", kSingersByAge,
                   "SimpleDDL-Coding-Chat"),
      Text2SqlCase("text2sql_simpleddl_coding_complete.txt", kSingersByAge,
                   "SimpleDDL-Coding-Complete"),
      {"error_classification.txt",
       [] {
         const auto& inst = Bench50At(kHighestAttendance);
         return sqlbench::RenderErrorClassification(
             inst.question, inst.gold_sql,
             "SELECT Name, Capacity FROM stadium WHERE Average = (SELECT MAX(Average) FROM "
             "stadium) ORDER BY Highest DESC");
       }},
      {"debug_wrong_sql_all_comment.txt",
       [] {
         const auto& inst = Bench50At(kSatAdministrators);
         const auto& catalog = FixtureCatalog(inst.db_id);
         const std::string wrong = ClassifierRuleCases()[9].pred;
         const auto outcome = sqlbench::Execute(FixtureDb(inst.db_id), wrong);
         const auto diagnosis = sqlbench::Classify(wrong, inst.gold_sql, outcome, &catalog,
                                                   inst.question);
         return sqlbench::RenderDebug(catalog, sqlbench::ComposeQuestion(inst), wrong,
                                      sqlbench::DebugStrategy::kWrongSqlAllComment,
                                      &diagnosis);
       }},
      {"optimization_demo_comments.txt",
       [] {
         const auto& inst = Bench50At(kQueensParkRangers);
         const std::string question = sqlbench::ComposeQuestion(inst);
         return sqlbench::RenderOptimization(inst.gold_sql, &FixtureCatalog(inst.db_id),
                                             question,
                                             sqlbench::OptimizationVariant::kDemoComments);
       }},
      {"sql_to_text.txt",
       [] { return sqlbench::RenderSql2Text(Bench50At(kHowManySingers).gold_sql); }},
      {"consistency.txt",
       [] {
         return sqlbench::RenderConsistency(Bench50At(kHowManySingers).question,
                                            "How many singers are there in total?");
       }},
      {"linking_zero_shot.txt",
       [] {
         const auto& inst = Bench50At(kQueensParkRangers);
         return sqlbench::RenderLinking(FixtureCatalog(inst.db_id),
                                        sqlbench::ComposeQuestion(inst),
                                        sqlbench::LinkingPromptMethod::kZeroShot, false);
       }},
      {"linking_few_shot.txt",
       [] {
         const auto& inst = Bench50At(kQueensParkRangers);
         sqlbench::ComposeOptions spaced;
         spaced.separator_space = true;
         return sqlbench::RenderLinking(FixtureCatalog(inst.db_id),
                                        sqlbench::ComposeQuestion(inst, spaced),
                                        sqlbench::LinkingPromptMethod::kFewShot, true);
       }},
  };
  return cases;
}

std::shared_ptr<sqlbench::ChatBackend> GoldOracleBackend(
    std::vector<sqlbench::BenchmarkInstance> instances, sqlbench::ComposeOptions compose) {
  return sqlbench::MakeScriptedBackend(
      [instances = std::move(instances), compose](const sqlbench::ChatRequest& request) {
        const sqlbench::BenchmarkInstance* best = nullptr;
        size_t best_length = 0;
        for (const auto& inst : instances) {
          const std::string q = sqlbench::ComposeQuestion(inst, compose);
          if (q.size() > best_length && request.prompt.find(q) != std::string::npos) {
            best = &inst;
            best_length = q.size();
          }
        }
        return best ? best->gold_sql : std::string("SELECT 1");
      });
}

sqlbench::ModelEndpointConfig StubEndpoint(const std::string& model_name) {
  sqlbench::ModelEndpointConfig cfg;
  cfg.base_url = "http://stub.invalid/v1";
  cfg.model_name = model_name;
  cfg.max_retries = 0;
  cfg.initial_backoff = std::chrono::milliseconds(1);
  return cfg;
}

std::shared_ptr<sqlbench::ChatBackend> KeyedBackend(
    std::vector<std::pair<std::string, std::string>> routes, std::string fallback) {
  return sqlbench::MakeScriptedBackend(
      [routes = std::move(routes), fallback](const sqlbench::ChatRequest& request) {
        for (const auto& [needle, reply] : routes) {
          if (request.prompt.find(needle) != std::string::npos) return reply;
        }
        return fallback;
      });
}

void WriteBirdDataset(const std::filesystem::path& path,
                      const std::vector<sqlbench::BenchmarkInstance>& instances) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& inst : instances) {
    out.push_back({{"question_id", inst.id},
                   {"db_id", inst.db_id},
                   {"question", inst.question},
                   {"evidence", inst.evidence},
                   {"SQL", inst.gold_sql}});
  }
  WriteFile(path, out.dump(2));
}

sqlbench::RunConfig StubRunConfig(sqlbench::Task task, const std::filesystem::path& dataset,
                                  const std::filesystem::path& output) {
  sqlbench::RunConfig config;
  config.task = task;
  config.run_id = "fixture-" + sqlbench::TaskName(task);
  config.dataset.path = dataset;
  config.dataset.format = sqlbench::DatasetFormat::kBirdJson;
  config.dataset.db_root = FixtureDbRoot();
  config.model = StubEndpoint();
  config.output = output;
  config.timing.warmups = 0;
  config.timing.repetitions = 1;
  return config;
}

}  // namespace sqlbench_test
