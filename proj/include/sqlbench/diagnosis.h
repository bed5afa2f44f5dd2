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

#ifndef SQLBENCH_DIAGNOSIS_H_
#define SQLBENCH_DIAGNOSIS_H_

#include <optional>
#include <string>
#include <string_view>

namespace sqlbench {

enum class ErrorKind { kSystemError, kResultError };

// Result Error subcategories in priority order.
enum class ErrorSubcategory {
  kExcessiveTables,
  kMissingTables,
  kIncorrectTables,
  kExcessiveColumns,
  kMissingColumns,
  kIncorrectColumns,
  kJoinColumns,
  kConditionFilter,
  kDataProcessing,
};

inline constexpr ErrorSubcategory kAllSubcategories[] = {
    ErrorSubcategory::kExcessiveTables, ErrorSubcategory::kMissingTables,
    ErrorSubcategory::kIncorrectTables, ErrorSubcategory::kExcessiveColumns,
    ErrorSubcategory::kMissingColumns,  ErrorSubcategory::kIncorrectColumns,
    ErrorSubcategory::kJoinColumns,     ErrorSubcategory::kConditionFilter,
    ErrorSubcategory::kDataProcessing,
};

struct ErrorDiagnosis {
  ErrorKind kind = ErrorKind::kResultError;
  std::string system_message;
  std::optional<ErrorSubcategory> subcategory;
  std::string comment;
  // Condition-filter label assigned without asking a model.
  bool unverified = false;
  // Predicted SQL executed but could not be parsed for rule checks.
  bool parse_degraded = false;
};

// Canonical annotation for a subcategory, verbatim from the comment table.
const std::string& CommentFor(ErrorSubcategory subcategory);

std::string SubcategoryName(ErrorSubcategory subcategory);
ErrorSubcategory ParseSubcategory(std::string_view name);

// Top-level group, e.g. "Table Query Error" for kMissingTables.
std::string SubcategoryGroup(ErrorSubcategory subcategory);

// Human-readable subcategory, e.g. "Missing Tables".
std::string SubcategoryTitle(ErrorSubcategory subcategory);

// Priority index: lower fires first.
int SubcategoryRank(ErrorSubcategory subcategory);

}  // namespace sqlbench

#endif  // SQLBENCH_DIAGNOSIS_H_
