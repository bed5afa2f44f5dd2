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

#ifndef SQLBENCH_SQLANALYSIS_H_
#define SQLBENCH_SQLANALYSIS_H_

#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "sqlbench/dataset.h"
#include "sqlbench/sql_ast.h"

namespace sqlbench {

// A column reference. An empty table marks an unqualified column that could
// not be attributed to a single table.
struct ColumnRef {
  std::string table;
  std::string column;

  bool resolved() const { return !table.empty(); }
  std::string Qualified() const { return table + "." + column; }
  auto operator<=>(const ColumnRef&) const = default;
};

// Unordered pair; first <= second.
using JoinPair = std::pair<ColumnRef, ColumnRef>;

JoinPair MakeJoinPair(ColumnRef a, ColumnRef b);

// Entities a query touches. All names are lowercase and alias-resolved.
struct EntityRefs {
  std::set<std::string> tables;
  std::set<ColumnRef> columns;
  // Columns referenced by the outermost query's result expressions.
  std::set<ColumnRef> selected_columns;
  std::set<JoinPair> join_pairs;

  bool operator==(const EntityRefs&) const = default;
};

enum class SetRelation { kEqual, kPredictedSuperset, kPredictedSubset, kIncomparable };

std::string SetRelationName(SetRelation relation);

struct StructuralDiff {
  SetRelation table_relation = SetRelation::kEqual;
  SetRelation column_relation = SetRelation::kEqual;
  // Same comparison restricted to the outermost result columns.
  SetRelation selected_column_relation = SetRelation::kEqual;
  bool join_equal = true;

  bool operator==(const StructuralDiff&) const = default;
};

sql::Query ParseSql(std::string_view sql);

EntityRefs ExtractEntities(std::string_view sql,
                           const DatabaseCatalog* catalog = nullptr);
EntityRefs ExtractEntities(const sql::Query& query,
                           const DatabaseCatalog* catalog = nullptr);

// Relation of pred to gold as sets.
template <typename T>
SetRelation CompareSets(const std::set<T>& pred, const std::set<T>& gold) {
  bool pred_covers = true;
  for (const auto& g : gold) {
    if (!pred.count(g)) {
      pred_covers = false;
      break;
    }
  }
  bool gold_covers = true;
  for (const auto& p : pred) {
    if (!gold.count(p)) {
      gold_covers = false;
      break;
    }
  }
  if (pred_covers && gold_covers) return SetRelation::kEqual;
  if (pred_covers) return SetRelation::kPredictedSuperset;
  if (gold_covers) return SetRelation::kPredictedSubset;
  return SetRelation::kIncomparable;
}

StructuralDiff DiffStructure(const EntityRefs& pred, const EntityRefs& gold);

// Pulls the last bracketed table list out of a linking completion and
// returns lowercase names; schema-qualified names are reduced to the catalog
// table they name. Throws ExtractionError when no list is present.
std::set<std::string> StripToTables(std::string_view answer_text,
                                    const DatabaseCatalog* catalog = nullptr);

// True when the outermost query carries an ORDER BY. Falls back to a token
// scan at parenthesis depth zero when the SQL does not parse.
bool HasTopLevelOrderBy(std::string_view sql);

}  // namespace sqlbench

#endif  // SQLBENCH_SQLANALYSIS_H_
