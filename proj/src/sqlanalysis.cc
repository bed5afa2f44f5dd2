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

#include "sqlbench/sqlanalysis.h"

#include <cctype>
#include <optional>
#include <vector>

#include "json.hpp"
#include "sqlbench/error.h"
#include "sqlbench/sql_parser.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

using sql::Expr;
using sql::ExprKind;
using sql::FromKind;
using sql::Query;
using sql::SelectCore;

struct Binding {
  std::string name;   // alias, or table name when unaliased
  std::string table;  // base table; empty for derived tables and CTEs
};

struct Scope {
  const Scope* parent = nullptr;
  std::vector<Binding> bindings;
  std::set<std::string> result_aliases;
};

bool IsIdentifierShaped(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

class EntityExtractor {
 public:
  EntityExtractor(const DatabaseCatalog* catalog, EntityRefs& out)
      : catalog_(catalog), out_(out) {}

  void VisitTopLevel(const Query& query) {
    top_level_ = &query;
    VisitQuery(query, nullptr, {});
  }

  void VisitQuery(const Query& query, const Scope* parent,
                  std::set<std::string> ctes) {
    const bool saved = collect_selected_;
    collect_selected_ = false;
    for (const auto& cte : query.ctes) {
      ctes.insert(ToLower(cte.name));
      VisitQuery(*cte.query, parent, ctes);
    }
    for (size_t i = 0; i < query.cores.size(); ++i) {
      VisitCore(query.cores[i], parent, ctes, i == 0 ? &query.order_by : nullptr,
                &query == top_level_);
    }
    if (parent != nullptr) {
      if (query.limit) VisitExpr(*query.limit, *parent, ctes, false);
      if (query.offset) VisitExpr(*query.offset, *parent, ctes, false);
    }
    collect_selected_ = saved;
  }

 private:
  bool CatalogHasColumn(const std::string& table, const std::string& column) const {
    if (catalog_ == nullptr) return false;
    const TableSchema* schema = catalog_->FindTable(table);
    return schema != nullptr && schema->FindColumn(column) != nullptr;
  }

  bool CatalogHasTable(const std::string& table) const {
    return catalog_ != nullptr && catalog_->FindTable(table) != nullptr;
  }

  void VisitCore(const SelectCore& core, const Scope* parent,
                 const std::set<std::string>& ctes,
                 const std::vector<sql::OrderingTerm>* order_by,
                 bool top_level) {
    Scope scope;
    scope.parent = parent;
    if (core.is_values) {
      for (const auto& row : core.values_rows)
        for (const auto& e : row) VisitExpr(*e, scope, ctes, false);
      return;
    }
    for (const auto& item : core.from) {
      switch (item.kind) {
        case FromKind::kTable: {
          std::string table = ToLower(item.name);
          std::string name = ToLower(item.alias.empty() ? item.name : item.alias);
          if (item.schema.empty() && ctes.count(table)) {
            scope.bindings.push_back({name, ""});
          } else {
            out_.tables.insert(table);
            scope.bindings.push_back({name, table});
          }
          break;
        }
        case FromKind::kSubquery:
          VisitQuery(*item.subquery, parent, ctes);
          scope.bindings.push_back({ToLower(item.alias), ""});
          break;
        case FromKind::kTableFunction:
          for (const auto& arg : item.function_args)
            VisitExpr(*arg, scope, ctes, false);
          scope.bindings.push_back(
              {ToLower(item.alias.empty() ? item.name : item.alias), ""});
          break;
      }
    }
    for (size_t i = 0; i < core.from.size(); ++i) {
      const auto& item = core.from[i];
      if (item.on) {
        VisitExpr(*item.on, scope, ctes, false);
        CollectJoinPairs(*item.on, scope);
      }
      for (const auto& column : item.using_columns) {
        AddUsingPair(scope, i, ToLower(column));
      }
    }
    for (const auto& column : core.columns) {
      collect_selected_ = top_level;
      VisitExpr(*column.expr, scope, ctes, false);
      collect_selected_ = false;
      if (!column.alias.empty()) scope.result_aliases.insert(ToLower(column.alias));
    }
    if (core.where) {
      VisitExpr(*core.where, scope, ctes, true);
      CollectJoinPairs(*core.where, scope);
    }
    for (const auto& e : core.group_by) VisitExpr(*e, scope, ctes, true);
    if (core.having) VisitExpr(*core.having, scope, ctes, true);
    if (order_by != nullptr) {
      for (const auto& term : *order_by) VisitExpr(*term.expr, scope, ctes, true);
    }
  }

  void AddUsingPair(const Scope& scope, size_t right_index, const std::string& column) {
    if (right_index >= scope.bindings.size()) return;
    const Binding& right = scope.bindings[right_index];
    if (right.table.empty()) return;
    const Binding* left = nullptr;
    for (size_t j = right_index; j-- > 0;) {
      const Binding& b = scope.bindings[j];
      if (b.table.empty()) continue;
      if (catalog_ == nullptr || CatalogHasColumn(b.table, column)) {
        left = &b;
        break;
      }
    }
    if (left == nullptr) return;
    ColumnRef l{left->table, column};
    ColumnRef r{right.table, column};
    out_.columns.insert(l);
    out_.columns.insert(r);
    if (l.table != r.table) out_.join_pairs.insert(MakeJoinPair(l, r));
  }

  // nullopt: not a base-table column (literal, result alias, derived column).
  std::optional<ColumnRef> Resolve(const Expr& e, const Scope& scope,
                                   bool allow_alias) const {
    const std::string column = ToLower(e.name);
    if (!e.qualifier.empty()) {
      const std::string qualifier = ToLower(e.qualifier);
      for (const Scope* s = &scope; s != nullptr; s = s->parent) {
        for (const auto& b : s->bindings) {
          if (b.name == qualifier) {
            if (b.table.empty()) return std::nullopt;
            return ColumnRef{b.table, column};
          }
        }
      }
      return ColumnRef{"", column};
    }
    if (!e.double_quoted && (column == "true" || column == "false")) {
      return std::nullopt;
    }
    if (e.double_quoted && catalog_ == nullptr && !IsIdentifierShaped(e.name)) {
      return std::nullopt;
    }
    if (allow_alias && scope.result_aliases.count(column)) {
      bool real_column = false;
      for (const auto& b : scope.bindings) {
        if (!b.table.empty() && CatalogHasColumn(b.table, column)) real_column = true;
      }
      if (!real_column) return std::nullopt;
    }
    for (const Scope* s = &scope; s != nullptr; s = s->parent) {
      if (s->bindings.empty()) continue;
      if (catalog_ != nullptr) {
        std::vector<const Binding*> matches;
        std::vector<const Binding*> unknown;
        bool has_derived = false;
        for (const auto& b : s->bindings) {
          if (b.table.empty()) {
            has_derived = true;
          } else if (CatalogHasColumn(b.table, column)) {
            matches.push_back(&b);
          } else if (!CatalogHasTable(b.table)) {
            unknown.push_back(&b);
          }
        }
        if (matches.size() == 1) return ColumnRef{matches[0]->table, column};
        if (matches.size() > 1) return ColumnRef{"", column};
        if (has_derived) return std::nullopt;
        if (!e.double_quoted && unknown.size() == 1 && s->bindings.size() == 1) {
          return ColumnRef{unknown[0]->table, column};
        }
        continue;
      }
      if (s->bindings.size() == 1) {
        if (s->bindings[0].table.empty()) return std::nullopt;
        return ColumnRef{s->bindings[0].table, column};
      }
      return ColumnRef{"", column};
    }
    if (e.double_quoted && catalog_ != nullptr) return std::nullopt;
    return ColumnRef{"", column};
  }

  void VisitExpr(const Expr& e, const Scope& scope,
                 const std::set<std::string>& ctes, bool allow_alias) {
    if (e.kind == ExprKind::kColumn) {
      if (auto ref = Resolve(e, scope, allow_alias)) {
        out_.columns.insert(*ref);
        if (collect_selected_) out_.selected_columns.insert(*ref);
      }
    }
    for (const auto& arg : e.args) VisitExpr(*arg, scope, ctes, allow_alias);
    for (const auto& arg : e.window_args) VisitExpr(*arg, scope, ctes, allow_alias);
    if (e.subquery) VisitQuery(*e.subquery, &scope, ctes);
  }

  void CollectJoinPairs(const Expr& e, const Scope& scope) {
    if (e.kind != ExprKind::kBinary) return;
    if (e.op == "AND" || e.op == "OR") {
      CollectJoinPairs(*e.args[0], scope);
      CollectJoinPairs(*e.args[1], scope);
      return;
    }
    if (e.op != "=" && e.op != "==") return;
    const Expr& lhs = *e.args[0];
    const Expr& rhs = *e.args[1];
    if (lhs.kind != ExprKind::kColumn || rhs.kind != ExprKind::kColumn) return;
    auto l = Resolve(lhs, scope, false);
    auto r = Resolve(rhs, scope, false);
    if (!l || !r || !l->resolved() || !r->resolved()) return;
    if (l->table == r->table) return;
    out_.join_pairs.insert(MakeJoinPair(*l, *r));
  }

  const DatabaseCatalog* catalog_;
  EntityRefs& out_;
  const Query* top_level_ = nullptr;
  bool collect_selected_ = false;
};

// Rewrites columns sharing a name with any unresolved column on either side to
// the unresolved form, so those compare by column name only.
void NormalizeUnresolved(std::set<ColumnRef>& a, std::set<ColumnRef>& b) {
  std::set<std::string> unresolved_names;
  for (const auto* s : {&a, &b})
    for (const auto& c : *s)
      if (!c.resolved()) unresolved_names.insert(c.column);
  auto rewrite = [&](std::set<ColumnRef>& s) {
    std::set<ColumnRef> out;
    for (const auto& c : s) {
      if (unresolved_names.count(c.column)) out.insert({"", c.column});
      else out.insert(c);
    }
    s = std::move(out);
  };
  rewrite(a);
  rewrite(b);
}

std::string CleanTableName(std::string_view raw) {
  std::string_view s = Trim(raw);
  while (!s.empty() && (s.front() == '"' || s.front() == '\'' ||
                        s.front() == '`' || s.front() == '[')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == '`' ||
                        s.back() == ']')) {
    s.remove_suffix(1);
  }
  return std::string(Trim(s));
}

std::optional<std::vector<std::string>> ParseBracketList(std::string_view span) {
  try {
    auto parsed = nlohmann::json::parse(span);
    if (!parsed.is_array()) return std::nullopt;
    std::vector<std::string> names;
    for (const auto& v : parsed) {
      if (!v.is_string()) return std::nullopt;
      names.push_back(v.get<std::string>());
    }
    return names;
  } catch (const nlohmann::json::exception&) {
  }
  // Unquoted or single-quoted lists: [a, b] / ['a', 'b']
  std::string_view inner = span.substr(1, span.size() - 2);
  std::vector<std::string> names;
  if (Trim(inner).empty()) return names;
  for (const auto& part : Split(inner, ',')) {
    std::string name = CleanTableName(part);
    if (name.empty() || name == "...") continue;
    for (char c : name) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ' ' ||
            c == '.' || c == '-'))
        return std::nullopt;
    }
    names.push_back(name);
  }
  if (names.empty()) return std::nullopt;
  return names;
}

}  // namespace

JoinPair MakeJoinPair(ColumnRef a, ColumnRef b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::string SetRelationName(SetRelation relation) {
  switch (relation) {
    case SetRelation::kEqual:
      return "equal";
    case SetRelation::kPredictedSuperset:
      return "predicted_superset";
    case SetRelation::kPredictedSubset:
      return "predicted_subset";
    case SetRelation::kIncomparable:
      return "incomparable";
  }
  return "unknown";
}

sql::Query ParseSql(std::string_view sql) { return sql::Parse(sql); }

EntityRefs ExtractEntities(const sql::Query& query, const DatabaseCatalog* catalog) {
  EntityRefs refs;
  EntityExtractor extractor(catalog, refs);
  extractor.VisitTopLevel(query);
  return refs;
}

EntityRefs ExtractEntities(std::string_view sql, const DatabaseCatalog* catalog) {
  return ExtractEntities(sql::Parse(sql), catalog);
}

StructuralDiff DiffStructure(const EntityRefs& pred, const EntityRefs& gold) {
  StructuralDiff diff;
  diff.table_relation = CompareSets(pred.tables, gold.tables);
  // Columns are compared only where both sides agree on the table.
  std::set<std::string> shared_tables;
  for (const auto& t : pred.tables)
    if (gold.tables.count(t)) shared_tables.insert(t);
  auto keep = [&](const std::set<ColumnRef>& in) {
    std::set<ColumnRef> out;
    for (const auto& c : in)
      if (!c.resolved() || shared_tables.count(c.table)) out.insert(c);
    return out;
  };
  std::set<ColumnRef> pred_columns = keep(pred.columns);
  std::set<ColumnRef> gold_columns = keep(gold.columns);
  NormalizeUnresolved(pred_columns, gold_columns);
  diff.column_relation = CompareSets(pred_columns, gold_columns);
  std::set<ColumnRef> pred_selected = keep(pred.selected_columns);
  std::set<ColumnRef> gold_selected = keep(gold.selected_columns);
  NormalizeUnresolved(pred_selected, gold_selected);
  diff.selected_column_relation = CompareSets(pred_selected, gold_selected);
  diff.join_equal = pred.join_pairs == gold.join_pairs;
  return diff;
}

std::set<std::string> StripToTables(std::string_view answer_text,
                                    const DatabaseCatalog* catalog) {
  std::optional<std::vector<std::string>> found;
  size_t pos = 0;
  while ((pos = answer_text.find('[', pos)) != std::string_view::npos) {
    size_t end = answer_text.find(']', pos + 1);
    if (end == std::string_view::npos) break;
    if (auto names = ParseBracketList(answer_text.substr(pos, end - pos + 1))) {
      found = std::move(names);
    }
    pos = pos + 1;
  }
  if (!found) throw ExtractionError("no bracketed table list in completion");
  std::set<std::string> tables;
  for (const auto& raw : *found) {
    std::string name = CleanTableName(raw);
    if (name.empty()) continue;
    if (catalog != nullptr && catalog->FindTable(name) == nullptr) {
      size_t dot = name.rfind('.');
      if (dot != std::string::npos && catalog->FindTable(name.substr(dot + 1)))
        name = name.substr(dot + 1);
    }
    tables.insert(ToLower(name));
  }
  return tables;
}

bool HasTopLevelOrderBy(std::string_view sql) {
  try {
    return !sql::Parse(sql).order_by.empty();
  } catch (const ParseError&) {
  }
  try {
    auto tokens = sql::Tokenize(sql);
    int depth = 0;
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t.kind == sql::TokenKind::kOperator) {
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
      }
      if (depth == 0 && t.kind == sql::TokenKind::kIdentifier &&
          EqualsIgnoreCase(t.text, "ORDER") &&
          tokens[i + 1].kind == sql::TokenKind::kIdentifier &&
          EqualsIgnoreCase(tokens[i + 1].text, "BY")) {
        return true;
      }
    }
    return false;
  } catch (const ParseError&) {
    return ToLower(sql).find("order by") != std::string::npos;
  }
}

}  // namespace sqlbench
