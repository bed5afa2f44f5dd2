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
#include <thread>

#include "cases.h"
#include "fixtures.h"
#include "sqlbench/error.h"
#include "sqlbench/executor.h"

namespace sqlbench {
namespace {

using namespace std::chrono_literals;
using sqlbench_test::FixtureDb;

class ExSemantics : public ::testing::TestWithParam<sqlbench_test::ExCase> {};

TEST_P(ExSemantics, AgreesWithHandLabel) {
  const auto& c = GetParam();
  const auto db = FixtureDb(c.db_id);
  const auto gold = Execute(db, c.gold);
  ASSERT_TRUE(gold.ok()) << gold.error_message;
  const auto pred = Execute(db, c.pred);
  EXPECT_EQ(pred.ok() && ResultsMatch(pred, gold, c.gold), c.match) << c.label;
}

INSTANTIATE_TEST_SUITE_P(HandLabelled, ExSemantics,
                         ::testing::ValuesIn(sqlbench_test::ExSemanticsCases()),
                         [](const auto& info) { return "case" + std::to_string(info.index); });

TEST(ExSemanticsSuite, HasTwentyPairs) {
  EXPECT_EQ(sqlbench_test::ExSemanticsCases().size(), 20u);
}

TEST(Execute, ReturnsTypedRows) {
  const auto out = Execute(FixtureDb("concert_singer"),
                           "SELECT Stadium_ID, Name, 1.5, NULL, x'0102' FROM stadium "
                           "WHERE Stadium_ID = 1");
  ASSERT_TRUE(out.ok()) << out.error_message;
  ASSERT_EQ(out.rows.size(), 1u);
  const Row& row = out.rows[0];
  EXPECT_EQ(std::get<int64_t>(row[0]), 1);
  EXPECT_EQ(std::get<std::string>(row[1]), "Stark's Park");
  EXPECT_DOUBLE_EQ(std::get<double>(row[2]), 1.5);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(row[3]));
  EXPECT_EQ(std::get<Blob>(row[4]).bytes, (std::vector<unsigned char>{1, 2}));
}

TEST(Execute, EngineErrorsAreOutcomesNotExceptions) {
  const auto out = Execute(FixtureDb("concert_singer"), "SELECT nme FROM singer");
  EXPECT_EQ(out.status, ExecutionStatus::kEngineError);
  EXPECT_NE(out.error_message.find("no such column"), std::string::npos);
}

TEST(Execute, WritesAreRejectedAndDatabaseUnchanged) {
  const auto db = FixtureDb("concert_singer");
  for (const char* sql : {"DELETE FROM singer", "UPDATE singer SET age = 1",
                          "DROP TABLE singer", "INSERT INTO singer (Singer_ID) VALUES (99)"}) {
    const auto out = Execute(db, sql);
    EXPECT_EQ(out.status, ExecutionStatus::kEngineError) << sql;
  }
  const auto count = Execute(db, "SELECT count(*) FROM singer");
  ASSERT_TRUE(count.ok());
  EXPECT_EQ(std::get<int64_t>(count.rows[0][0]), 6);
}

TEST(Execute, SingleStatementOnly) {
  const auto out = Execute(FixtureDb("concert_singer"), "SELECT 1; SELECT 2");
  EXPECT_EQ(out.status, ExecutionStatus::kEngineError);
  EXPECT_TRUE(Execute(FixtureDb("concert_singer"), "SELECT 1;").ok());
}

TEST(Execute, Timeout) {
  const auto out = Execute(FixtureDb("concert_singer"),
                           "WITH RECURSIVE c(x) AS (SELECT 1 UNION ALL SELECT x + 1 FROM c) "
                           "SELECT count(*) FROM c",
                           50ms);
  EXPECT_EQ(out.status, ExecutionStatus::kTimeout);
  EXPECT_LT(out.elapsed, 5s);
}

TEST(Execute, MissingDatabaseIsADataError) {
  EXPECT_THROW(Execute("/nonexistent/x.sqlite", "SELECT 1"), DataError);
}

TEST(ValuesEqual, NumericToleranceAndClasses) {
  EXPECT_TRUE(ValuesEqual(int64_t{3}, 3.0));
  EXPECT_TRUE(ValuesEqual(1.0, 1.0 + 1e-7));
  EXPECT_FALSE(ValuesEqual(1.0, 1.0 + 1e-5));
  EXPECT_FALSE(ValuesEqual(std::string("3"), int64_t{3}));
  EXPECT_TRUE(ValuesEqual(Value{}, Value{}));
  EXPECT_FALSE(ValuesEqual(Value{}, std::string("")));
}

TEST(ResultsMatch, MultisetUnlessGoldIsOrdered) {
  ExecutionOutcome a, b;
  a.rows = {{int64_t{1}}, {int64_t{2}}, {int64_t{2}}};
  b.rows = {{int64_t{2}}, {int64_t{1}}, {int64_t{2}}};
  EXPECT_TRUE(ResultsMatch(a, b, "SELECT x FROM t"));
  EXPECT_FALSE(ResultsMatch(a, b, "SELECT x FROM t ORDER BY x"));
  b.rows.pop_back();
  EXPECT_FALSE(ResultsMatch(a, b, "SELECT x FROM t"));
  ExecutionOutcome failed;
  failed.status = ExecutionStatus::kEngineError;
  EXPECT_FALSE(ResultsMatch(failed, failed, "SELECT 1"));
}

TEST(MedianSeconds, OddAndEven) {
  EXPECT_DOUBLE_EQ(MedianSeconds({3s, 1s, 2s}), 2.0);
  EXPECT_DOUBLE_EQ(MedianSeconds({4s, 1s, 2s, 3s}), 2.5);
  EXPECT_THROW(MedianSeconds({}), Error);
}

TEST(TimeQuery, StepClockGivesExactMedian) {
  StepClock clock(10ms);
  TimingProtocol protocol;
  const auto profile =
      TimeQuery(FixtureDb("concert_singer"), "SELECT count(*) FROM singer", protocol, &clock);
  ASSERT_EQ(profile.samples.size(), 5u);
  for (auto s : profile.samples) EXPECT_EQ(s, 10ms);
  EXPECT_DOUBLE_EQ(profile.median_seconds, 0.01);
  EXPECT_DOUBLE_EQ(profile.efficiency, 100.0);
}

TEST(TimeQuery, FailingQueryIsATimingError) {
  EXPECT_THROW(TimeQuery(FixtureDb("concert_singer"), "SELECT nme FROM singer", {}),
               TimingError);
}

TEST(TimingProtocol, Validation) {
  TimingProtocol p;
  p.repetitions = 0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p.repetitions = 1;
  p.warmups = -1;
  EXPECT_THROW(p.Validate(), ConfigError);
}

// Timing takes the exclusive side of the executor lock while plain
// executions share it; both must make progress from many threads.
TEST(Executor, ConcurrentExecuteAndTiming) {
  const auto db = FixtureDb("concert_singer");
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        if (t % 3 == 0) {
          TimingProtocol p;
          p.warmups = 0;
          p.repetitions = 1;
          TimeQuery(db, "SELECT count(*) FROM singer", p);
          ++ok;
        } else if (Execute(db, "SELECT count(*) FROM singer").ok()) {
          ++ok;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 60);
}

}  // namespace
}  // namespace sqlbench
