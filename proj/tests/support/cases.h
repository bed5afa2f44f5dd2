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


#ifndef SQLBENCH_TESTS_SUPPORT_CASES_H_
#define SQLBENCH_TESTS_SUPPORT_CASES_H_

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqlbench/dataset.h"
#include "sqlbench/diagnosis.h"
#include "sqlbench/llmclient.h"
#include "sqlbench/pipeline.h"
#include "sqlbench/prompt.h"

namespace sqlbench_test {

// Hand-labelled execution-accuracy pairs.
struct ExCase {
  std::string label;
  std::string db_id;
  std::string pred;
  std::string gold;
  bool match;
};
const std::vector<ExCase>& ExSemanticsCases();

// Wrong predictions with the subcategory the rules must assign.
struct ClassifierCase {
  std::string label;
  std::string db_id;
  std::string pred;
  std::string gold;
  sqlbench::ErrorSubcategory expected;
};
const std::vector<ClassifierCase>& ClassifierRuleCases();

// Comment texts copied from the published taxonomy table, in enum order.
const std::vector<std::string>& PublishedComments();

struct GoldenCase {
  std::string file;
  std::function<sqlbench::RenderedPrompt()> render;
};
const std::vector<GoldenCase>& PromptGoldenCases();

// The 50-instance slice under tests/fixtures.
std::filesystem::path Bench50Path();
const std::vector<sqlbench::BenchmarkInstance>& Bench50();
// Instance by its position in the slice.
const sqlbench::BenchmarkInstance& Bench50At(size_t index);

// Answers each prompt with the gold SQL of the instance whose question the
// prompt contains (longest match wins).
std::shared_ptr<sqlbench::ChatBackend> GoldOracleBackend(
    std::vector<sqlbench::BenchmarkInstance> instances,
    sqlbench::ComposeOptions compose = {});

// Answers with the reply of the first needle found in the prompt.
std::shared_ptr<sqlbench::ChatBackend> KeyedBackend(
    std::vector<std::pair<std::string, std::string>> routes,
    std::string fallback = "SELECT 1");

// Writes instances as a BIRD-format JSON array.
void WriteBirdDataset(const std::filesystem::path& path,
                      const std::vector<sqlbench::BenchmarkInstance>& instances);

sqlbench::ModelEndpointConfig StubEndpoint(const std::string& model_name = "stub-model");

// Run configuration over a dataset file with the fixture databases.
sqlbench::RunConfig StubRunConfig(sqlbench::Task task,
                                  const std::filesystem::path& dataset,
                                  const std::filesystem::path& output);

}  // namespace sqlbench_test

#endif  // SQLBENCH_TESTS_SUPPORT_CASES_H_
