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

#include "sqlbench/classifier.h"

#include "sqlbench/error.h"
#include "sqlbench/llmclient.h"
#include "sqlbench/prompt.h"
#include "sqlbench/sqlanalysis.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

ErrorDiagnosis ResultError(ErrorSubcategory subcategory) {
  ErrorDiagnosis d;
  d.kind = ErrorKind::kResultError;
  d.subcategory = subcategory;
  d.comment = CommentFor(subcategory);
  return d;
}

std::optional<ErrorSubcategory> ByRelation(SetRelation relation,
                                           ErrorSubcategory excessive,
                                           ErrorSubcategory missing,
                                           ErrorSubcategory incorrect) {
  switch (relation) {
    case SetRelation::kEqual: return std::nullopt;
    case SetRelation::kPredictedSuperset: return excessive;
    case SetRelation::kPredictedSubset: return missing;
    case SetRelation::kIncomparable: return incorrect;
  }
  return std::nullopt;
}

}  // namespace

ErrorSubcategory ParseLlmVerdict(std::string_view completion) {
  const std::string lower = ToLower(completion);
  const size_t filter = lower.rfind("condition filter");
  const size_t processing = lower.rfind("data processing");
  if (filter == std::string::npos && processing == std::string::npos) {
    throw ExtractionError("no error category in classifier answer");
  }
  if (processing == std::string::npos) return ErrorSubcategory::kConditionFilter;
  if (filter == std::string::npos) return ErrorSubcategory::kDataProcessing;
  return filter > processing ? ErrorSubcategory::kConditionFilter
                             : ErrorSubcategory::kDataProcessing;
}

ErrorDiagnosis Classify(std::string_view pred_sql, std::string_view gold_sql,
                        const ExecutionOutcome& pred_outcome,
                        const DatabaseCatalog* catalog,
                        std::string_view question, LlmClient* llm) {
  if (!pred_outcome.ok()) {
    ErrorDiagnosis d;
    d.kind = ErrorKind::kSystemError;
    d.system_message = pred_outcome.error_message;
    return d;
  }
  if (Trim(pred_sql) == Trim(gold_sql)) {
    throw ArgumentError("cannot classify a prediction identical to the gold SQL");
  }
  const EntityRefs gold = ExtractEntities(gold_sql, catalog);
  EntityRefs pred;
  try {
    pred = ExtractEntities(pred_sql, catalog);
  } catch (const ParseError&) {
    ErrorDiagnosis d = ResultError(ErrorSubcategory::kIncorrectTables);
    d.parse_degraded = true;
    return d;
  }
  const StructuralDiff diff = DiffStructure(pred, gold);
  if (auto sub = ByRelation(diff.table_relation,
                            ErrorSubcategory::kExcessiveTables,
                            ErrorSubcategory::kMissingTables,
                            ErrorSubcategory::kIncorrectTables)) {
    return ResultError(*sub);
  }
  if (auto sub = ByRelation(diff.selected_column_relation,
                            ErrorSubcategory::kExcessiveColumns,
                            ErrorSubcategory::kMissingColumns,
                            ErrorSubcategory::kIncorrectColumns)) {
    return ResultError(*sub);
  }
  if (!diff.join_equal) return ResultError(ErrorSubcategory::kJoinColumns);

  if (llm != nullptr) {
    const RenderedPrompt prompt =
        RenderErrorClassification(question, gold_sql, pred_sql);
    const CompletionRecord record = llm->Complete(prompt);
    try {
      return ResultError(ParseLlmVerdict(record.completion));
    } catch (const ExtractionError&) {
      // An unusable answer is treated like having no model.
    }
  }
  ErrorDiagnosis d = ResultError(ErrorSubcategory::kConditionFilter);
  d.unverified = true;
  return d;
}

}  // namespace sqlbench
