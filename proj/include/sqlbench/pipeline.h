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

#ifndef SQLBENCH_PIPELINE_H_
#define SQLBENCH_PIPELINE_H_

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sqlbench/dataset.h"
#include "sqlbench/executor.h"
#include "sqlbench/llmclient.h"
#include "sqlbench/prompt.h"

namespace sqlbench {

enum class Task {
  kText2Sql,
  kSelfDebug,
  kGeneralDebug,
  kOptimization,
  kSql2Text,
  kSchemaLinking,
};

std::string TaskName(Task task);
Task ParseTask(std::string_view name);

enum class OptimizationMode { kTwoStage, kDirect };

std::string OptimizationModeName(OptimizationMode mode);
OptimizationMode ParseOptimizationMode(std::string_view name);

enum class LinkingMethod { kZeroShot, kFewShot, kPreSql, kFewShotPlusPreSql };

inline constexpr LinkingMethod kAllLinkingMethods[] = {
    LinkingMethod::kZeroShot, LinkingMethod::kFewShot, LinkingMethod::kPreSql,
    LinkingMethod::kFewShotPlusPreSql};

std::string LinkingMethodName(LinkingMethod method);
std::string LinkingMethodTitle(LinkingMethod method);
LinkingMethod ParseLinkingMethod(std::string_view name);

struct DatasetConfig {
  std::filesystem::path path;
  DatasetFormat format = DatasetFormat::kBirdJson;
  std::filesystem::path db_root;
  ComposeOptions compose;
  // Keep only the first N instances when > 0.
  int limit = 0;
};

struct RunConfig {
  Task task = Task::kText2Sql;
  std::string run_id;
  DatasetConfig dataset;
  ModelEndpointConfig model;
  std::optional<ModelEndpointConfig> debugger_model;
  std::optional<ModelEndpointConfig> classifier_model;
  std::optional<ModelEndpointConfig> evaluator_model;
  std::string template_name = "SimpleDDL-MD-Chat";
  // Text-to-SQL record the debug tasks start from.
  std::filesystem::path prior_record;
  std::vector<DebugStrategy> strategies = {DebugStrategy::kWrongSqlAllComment};
  int rounds = 1;
  OptimizationMode optimization_mode = OptimizationMode::kTwoStage;
  OptimizationVariant optimization_variant = OptimizationVariant::kDemoComments;
  std::vector<LinkingMethod> linking_methods = {std::begin(kAllLinkingMethods),
                                                std::end(kAllLinkingMethods)};
  std::vector<bool> fk_settings = {false, true};
  int parallelism = 1;
  TimingProtocol timing;
  std::chrono::nanoseconds execution_timeout = kDefaultTimeout;
  std::filesystem::path cache_dir;
  std::filesystem::path output;

  void Validate() const;
};

// Paths in `j` are resolved against base_dir.
RunConfig RunConfigFromJson(const nlohmann::json& j,
                            const std::filesystem::path& base_dir);
nlohmann::json RunConfigToJson(const RunConfig& config);

// Reads a JSON config, expands ${VAR} in strings, applies dotted key=value
// overrides, then resolves paths relative to the file's directory.
RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides = {});

nlohmann::json ApplyOverrides(nlohmann::json j,
                              const std::vector<std::string>& overrides);
nlohmann::json InterpolateEnv(const nlohmann::json& j);

// Header, one entry per instance in index order, and the aggregate metrics.
struct RunRecord {
  std::string run_id;
  Task task = Task::kText2Sql;
  nlohmann::json config;
  std::vector<nlohmann::json> entries;
  nlohmann::json aggregate;
};

RunRecord LoadRunRecord(const std::filesystem::path& path);
void WriteRunRecord(const RunRecord& record, const std::filesystem::path& path);

// Clients and hooks a run needs. Null clients are built from the config:
// an HTTP backend, or cache-only when `offline` is set.
struct RunContext {
  std::shared_ptr<LlmClient> model;
  std::shared_ptr<LlmClient> debugger;
  std::shared_ptr<LlmClient> classifier;
  std::shared_ptr<LlmClient> evaluator;
  // Used for VES timing; null means the steady clock. Must be safe to call
  // under the executor's timing lock (it is only read there).
  Clock* clock = nullptr;
  // Reuse efficiency measurements from this record where the SQL matches.
  const RunRecord* timing_source = nullptr;
  bool offline = false;
};

RunRecord RunText2Sql(const Benchmark& data, const RunConfig& config,
                      RunContext& context);
RunRecord RunSelfDebug(const Benchmark& data, const RunRecord& prior,
                       const RunConfig& config, RunContext& context);
RunRecord RunGeneralDebug(const Benchmark& data, const RunRecord& prior,
                          const RunConfig& config, RunContext& context);
RunRecord RunOptimization(const Benchmark& data, const RunConfig& config,
                          RunContext& context);
RunRecord RunSql2Text(const Benchmark& data, const RunConfig& config,
                      RunContext& context);
RunRecord RunSchemaLinking(const Benchmark& data, const RunConfig& config,
                           RunContext& context);

// Loads data (and the prior record for debug tasks) and dispatches on task.
RunRecord ExecuteRun(const RunConfig& config, RunContext& context);

Benchmark LoadBenchmark(const DatasetConfig& dataset);

// Recomputes the aggregate of a record from its entries.
nlohmann::json AggregateEntries(Task task, const nlohmann::json& config,
                                const std::vector<nlohmann::json>& entries);

enum class ReportFormat { kMarkdown, kCsv, kJson };

ReportFormat ParseReportFormat(std::string_view name);

std::string ScoreAndReport(const RunRecord& record, ReportFormat format);

}  // namespace sqlbench

#endif  // SQLBENCH_PIPELINE_H_
