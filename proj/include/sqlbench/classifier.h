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

#ifndef SQLBENCH_CLASSIFIER_H_
#define SQLBENCH_CLASSIFIER_H_

#include <string_view>

#include "sqlbench/dataset.h"
#include "sqlbench/diagnosis.h"
#include "sqlbench/executor.h"

namespace sqlbench {

class LlmClient;

// Diagnoses a wrong prediction. Rules decide tables, selected columns and
// join pairs in that order; what remains is split into condition filter vs
// data processing by the model, or labelled condition_filter (unverified)
// when llm is null. Throws ArgumentError if pred and gold are the same query
// and pred ran cleanly.
ErrorDiagnosis Classify(std::string_view pred_sql, std::string_view gold_sql,
                        const ExecutionOutcome& pred_outcome,
                        const DatabaseCatalog* catalog,
                        std::string_view question, LlmClient* llm = nullptr);

// Last mention of "Condition Filter" or "Data Processing" wins. Throws
// ExtractionError when neither appears.
ErrorSubcategory ParseLlmVerdict(std::string_view completion);

}  // namespace sqlbench

#endif  // SQLBENCH_CLASSIFIER_H_
