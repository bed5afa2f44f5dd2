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

#ifndef SQLBENCH_PROMPT_H_
#define SQLBENCH_PROMPT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlbench/dataset.h"
#include "sqlbench/diagnosis.h"

namespace sqlbench {

enum class SchemaStyle { kDdl, kSimpleDdl };
enum class WrapStyle { kMarkdown, kHtml, kCoding };
enum class AnswerStyle { kChat, kComplete };

// One Text-to-SQL template: schema prefix x wrapping infix x answer postfix.
struct TemplateSpec {
  SchemaStyle schema_style = SchemaStyle::kSimpleDdl;
  WrapStyle wrap_style = WrapStyle::kMarkdown;
  AnswerStyle answer_style = AnswerStyle::kChat;
  bool include_foreign_keys = false;
  // Asks for the most efficient query; only valid with SimpleDDL-MD-Chat.
  bool efficiency_variant = false;

  // "SimpleDDL-MD-Chat", "DDL-HTML-Complete", "SimpleDDL-MD-Chat-Efficiency".
  std::string Name() const;
  static TemplateSpec FromName(std::string_view name);
  void Validate() const;

  bool operator==(const TemplateSpec&) const = default;
};

// The eight templates scored in the zero-shot template comparison.
std::vector<TemplateSpec> StandardTemplatePresets();
// All twelve schema x wrap x answer combinations.
std::vector<TemplateSpec> AllTemplateCombinations();

enum class AnswerMode {
  kFreeSql,
  kCompletionAfterSelect,
  kBracketedTableList,
  kQuestionText,
  kTrueFalse,
  kErrorCategory,
};

std::string AnswerModeName(AnswerMode mode);

struct RenderedPrompt {
  std::string text;
  std::string template_name;
  AnswerMode expected_answer_mode = AnswerMode::kFreeSql;
};

// DDL: one CREATE TABLE line per table. SimpleDDL: "table(Col1,Col2);" lines,
// the last ending in "."; with_fk appends a "Foreign key:" block of
// "child(col) REFERENCES parent(col)" lines (DDL inlines FOREIGN KEY clauses).
std::string RenderSchema(const DatabaseCatalog& catalog, SchemaStyle style,
                         bool with_fk);

RenderedPrompt RenderText2Sql(const DatabaseCatalog& catalog,
                              std::string_view question,
                              const TemplateSpec& spec);

enum class DebugStrategy {
  kRegenerate,
  kWrongSql,
  kWrongSqlSystem,
  kWrongSqlAll,
  kWrongSqlAllComment,
};

inline constexpr DebugStrategy kAllDebugStrategies[] = {
    DebugStrategy::kRegenerate, DebugStrategy::kWrongSql,
    DebugStrategy::kWrongSqlSystem, DebugStrategy::kWrongSqlAll,
    DebugStrategy::kWrongSqlAllComment};

std::string DebugStrategyName(DebugStrategy strategy);
std::string DebugStrategyTitle(DebugStrategy strategy);
DebugStrategy ParseDebugStrategy(std::string_view name);
bool StrategyNeedsDiagnosis(DebugStrategy strategy);

// First line of error information for queries that ran but returned the
// wrong rows.
inline constexpr std::string_view kRoughResultError =
    "Executed correctly, but with the wrong result.";

// Regenerate returns the Text-to-SQL prompt for `base` unchanged.
RenderedPrompt RenderDebug(const DatabaseCatalog& catalog,
                           std::string_view question, std::string_view wrong_sql,
                           DebugStrategy strategy,
                           const ErrorDiagnosis* diagnosis,
                           const TemplateSpec& base = {});

enum class OptimizationVariant { kYOnly, kYSchema, kYSchemaQuestion, kDemo, kDemoComments };

std::string OptimizationVariantName(OptimizationVariant variant);
OptimizationVariant ParseOptimizationVariant(std::string_view name);

RenderedPrompt RenderOptimization(std::string_view sql,
                                  const DatabaseCatalog* catalog,
                                  std::optional<std::string_view> question,
                                  OptimizationVariant variant);

RenderedPrompt RenderSql2Text(std::string_view sql,
                              std::optional<std::string_view> evidence = {});

enum class LinkingPromptMethod { kZeroShot, kFewShot };

RenderedPrompt RenderLinking(const DatabaseCatalog& catalog,
                             std::string_view question,
                             LinkingPromptMethod method, bool with_fk);

RenderedPrompt RenderErrorClassification(std::string_view question,
                                         std::string_view gold_sql,
                                         std::string_view wrong_sql);

RenderedPrompt RenderConsistency(std::string_view sentence1,
                                 std::string_view sentence2);

}  // namespace sqlbench

#endif  // SQLBENCH_PROMPT_H_
