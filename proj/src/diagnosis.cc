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

#include "sqlbench/diagnosis.h"

#include <array>

#include "sqlbench/error.h"

namespace sqlbench {
namespace {

struct SubcategoryInfo {
  ErrorSubcategory subcategory;
  const char* name;
  const char* group;
  const char* title;
  const char* comment;
};

constexpr std::array<SubcategoryInfo, 9> kInfo = {{
    {ErrorSubcategory::kExcessiveTables, "excessive_tables", "Table Query Error",
     "Excessive Tables",
     "The tables you inquired about is incorrect, you query too much tables."},
    {ErrorSubcategory::kMissingTables, "missing_tables", "Table Query Error",
     "Missing Tables",
     "The tables you inquired about is incorrect, you need to query more "
     "tables."},
    {ErrorSubcategory::kIncorrectTables, "incorrect_tables", "Table Query Error",
     "Incorrect Tables", "The tables you inquired about is incorrect."},
    {ErrorSubcategory::kExcessiveColumns, "excessive_columns",
     "Column Selection Error", "Excessive Columns",
     "You have found the correct tables. But you select wrong columns,you "
     "select too much Columns."},
    {ErrorSubcategory::kMissingColumns, "missing_columns",
     "Column Selection Error", "Missing Columns",
     "You have found the correct tables. But you select wrong columns,you need "
     "to select more Columns."},
    {ErrorSubcategory::kIncorrectColumns, "incorrect_columns",
     "Column Selection Error", "Incorrect Columns",
     "You have found the correct tables.But you select wrong columns."},
    {ErrorSubcategory::kJoinColumns, "join_columns", "Join Columns Error",
     "Join Columns",
     "You have found the correct tables. You have selected the correct "
     "Columns. But you combine wrong rows when JOIN two tables."},
    {ErrorSubcategory::kConditionFilter, "condition_filter",
     "Condition Filter Error", "Condition Filter",
     "You have found the correct tables.You have selected the correct "
     "Columns. You have combined (JOIN) the correct tables. But an error "
     "occurred in the conditional filter."},
    {ErrorSubcategory::kDataProcessing, "data_processing",
     "Data Processing Error", "Data Processing",
     "You have found the correct tables. You have selected the correct "
     "Columns. You have combined (JOIN) the correct tables. You have used the "
     "correct conditional filtering. But there was an error in your "
     "processing of the data."},
}};

const SubcategoryInfo& Info(ErrorSubcategory subcategory) {
  return kInfo[static_cast<size_t>(subcategory)];
}

}  // namespace

const std::string& CommentFor(ErrorSubcategory subcategory) {
  static const std::array<std::string, 9> comments = [] {
    std::array<std::string, 9> out;
    for (size_t i = 0; i < kInfo.size(); ++i) out[i] = kInfo[i].comment;
    return out;
  }();
  return comments[static_cast<size_t>(subcategory)];
}

std::string SubcategoryName(ErrorSubcategory subcategory) {
  return Info(subcategory).name;
}

ErrorSubcategory ParseSubcategory(std::string_view name) {
  for (const auto& info : kInfo) {
    if (name == info.name) return info.subcategory;
  }
  throw ArgumentError("unknown error subcategory '" + std::string(name) + "'");
}

std::string SubcategoryGroup(ErrorSubcategory subcategory) {
  return Info(subcategory).group;
}

std::string SubcategoryTitle(ErrorSubcategory subcategory) {
  return Info(subcategory).title;
}

int SubcategoryRank(ErrorSubcategory subcategory) {
  return static_cast<int>(subcategory);
}

}  // namespace sqlbench
