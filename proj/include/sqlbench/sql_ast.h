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

#ifndef SQLBENCH_SQL_AST_H_
#define SQLBENCH_SQL_AST_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sqlbench::sql {

struct Query;

enum class ExprKind {
  kLiteral,         // text holds the literal token
  kColumn,          // qualifier (optional) . name
  kStar,            // * or qualifier.*
  kUnary,           // op args[0]
  kBinary,          // args[0] op args[1]
  kFunction,        // name(args), distinct, star_argument, window args
  kCase,            // args: [operand], when0, then0, ..., [else]
  kCast,            // args[0], text holds the type name
  kInList,          // args[0] [NOT] IN (args[1..])
  kInSubquery,      // args[0] [NOT] IN (subquery)
  kBetween,         // args[0] [NOT] BETWEEN args[1] AND args[2]
  kExists,          // [NOT] EXISTS (subquery)
  kScalarSubquery,  // (subquery)
  kRow,             // (args...)
};

struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  std::string op;         // operator, or function name for kFunction
  std::string text;       // literal text or cast type
  std::string qualifier;  // kColumn / kStar
  std::string name;       // kColumn
  // The column name token was a double-quoted identifier, which SQLite
  // falls back to treating as a string literal when no column matches.
  bool double_quoted = false;
  bool negated = false;   // NOT IN / NOT BETWEEN / NOT EXISTS / CASE has operand
  bool distinct = false;  // aggregate DISTINCT
  bool star_argument = false;
  bool has_case_operand = false;
  bool has_else = false;
  std::vector<std::unique_ptr<Expr>> args;
  // PARTITION BY and ORDER BY expressions of an OVER clause.
  std::vector<std::unique_ptr<Expr>> window_args;
  std::unique_ptr<Query> subquery;
  size_t position = 0;
};

using ExprPtr = std::unique_ptr<Expr>;

struct ResultColumn {
  ExprPtr expr;
  std::string alias;
};

enum class FromKind { kTable, kSubquery, kTableFunction };

struct FromItem {
  FromKind kind = FromKind::kTable;
  std::string schema;
  std::string name;
  std::string alias;
  std::unique_ptr<Query> subquery;
  std::vector<ExprPtr> function_args;
  // Operator joining this item to the items before it; empty for the first.
  std::string join_operator;
  ExprPtr on;
  std::vector<std::string> using_columns;
};

struct OrderingTerm {
  ExprPtr expr;
  bool descending = false;
};

struct SelectCore {
  bool distinct = false;
  bool is_values = false;
  std::vector<ResultColumn> columns;
  std::vector<std::vector<ExprPtr>> values_rows;
  std::vector<FromItem> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
};

struct CommonTableExpression {
  std::string name;
  std::vector<std::string> columns;
  std::unique_ptr<Query> query;
};

struct Query {
  bool recursive = false;
  std::vector<CommonTableExpression> ctes;
  std::vector<SelectCore> cores;
  // compound_operators[i] joins cores[i] and cores[i + 1].
  std::vector<std::string> compound_operators;
  std::vector<OrderingTerm> order_by;
  ExprPtr limit;
  ExprPtr offset;
};

}  // namespace sqlbench::sql

#endif  // SQLBENCH_SQL_AST_H_
