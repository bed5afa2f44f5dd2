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

#include "sqlbench/dataset.h"

#include <sqlite3.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sqlbench/error.h"
#include "sqlbench/sqlanalysis.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

using nlohmann::json;

class ReadOnlyDb {
 public:
  explicit ReadOnlyDb(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw CatalogError("database file not found: " + path.string());
    }
    int rc = sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READONLY, nullptr);
    if (rc != SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : sqlite3_errstr(rc);
      sqlite3_close(db_);
      db_ = nullptr;
      throw CatalogError("cannot open " + path.string() + ": " + msg);
    }
  }
  ~ReadOnlyDb() { sqlite3_close(db_); }
  ReadOnlyDb(const ReadOnlyDb&) = delete;
  ReadOnlyDb& operator=(const ReadOnlyDb&) = delete;

  // Runs a read query returning text cells; NULL becomes the empty string.
  std::vector<std::vector<std::string>> Query(const std::string& sql) {
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
      std::string msg = sqlite3_errmsg(db_);
      sqlite3_finalize(stmt);
      throw CatalogError(msg);
    }
    std::vector<std::vector<std::string>> rows;
    int rc;
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
      std::vector<std::string> row;
      for (int i = 0; i < sqlite3_column_count(stmt); ++i) {
        const unsigned char* text = sqlite3_column_text(stmt, i);
        row.emplace_back(text ? reinterpret_cast<const char*>(text) : "");
      }
      rows.push_back(std::move(row));
    }
    std::string msg = rc == SQLITE_DONE ? "" : sqlite3_errmsg(db_);
    sqlite3_finalize(stmt);
    if (rc != SQLITE_DONE) throw CatalogError(msg);
    return rows;
  }

 private:
  sqlite3* db_ = nullptr;
};

std::string QuoteIdentifier(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

std::string RequireString(const json& record, const char* field, size_t index) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    throw DataError("record " + std::to_string(index) + ": missing string field '" +
                    field + "'");
  }
  return it->get<std::string>();
}

}  // namespace

const ColumnSchema* TableSchema::FindColumn(std::string_view column) const {
  for (const auto& c : columns)
    if (EqualsIgnoreCase(c.name, column)) return &c;
  return nullptr;
}

const TableSchema* DatabaseCatalog::FindTable(std::string_view table) const {
  for (const auto& t : tables)
    if (EqualsIgnoreCase(t.name, table)) return &t;
  return nullptr;
}

void DatabaseCatalog::Validate() const {
  if (tables.empty()) throw CatalogError(db_id + ": catalog has no tables");
  std::set<std::string> table_names;
  for (const auto& t : tables) {
    if (!table_names.insert(ToLower(t.name)).second)
      throw CatalogError(db_id + ": duplicate table " + t.name);
    if (t.columns.empty()) throw CatalogError(db_id + ": table " + t.name + " has no columns");
    std::set<std::string> column_names;
    for (const auto& c : t.columns) {
      if (!column_names.insert(ToLower(c.name)).second)
        throw CatalogError(db_id + ": duplicate column " + t.name + "." + c.name);
    }
  }
  for (const auto& fk : foreign_keys) {
    const TableSchema* child = FindTable(fk.child_table);
    const TableSchema* parent = FindTable(fk.parent_table);
    if (!child || !parent || !child->FindColumn(fk.child_column) ||
        !parent->FindColumn(fk.parent_column)) {
      throw CatalogError(db_id + ": dangling foreign key " + fk.child_table + "(" +
                         fk.child_column + ") -> " + fk.parent_table + "(" +
                         fk.parent_column + ")");
    }
  }
}

DatabaseCatalog IntrospectCatalog(const std::filesystem::path& db_path) {
  ReadOnlyDb db(db_path);
  DatabaseCatalog catalog;
  catalog.db_id = db_path.stem().string();
  auto table_rows = db.Query(
      "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE "
      "'sqlite_stat%' ORDER BY rowid");
  for (const auto& row : table_rows) {
    TableSchema table;
    table.name = row[0];
    for (const auto& col :
         db.Query("PRAGMA table_info(" + QuoteIdentifier(table.name) + ")")) {
      // cid, name, type, notnull, dflt_value, pk
      table.columns.push_back({col[1], col[2], col[5] != "0"});
    }
    catalog.tables.push_back(std::move(table));
  }
  if (catalog.tables.empty()) {
    throw CatalogError(db_path.string() + ": database has no tables");
  }
  for (const auto& table : catalog.tables) {
    auto fk_rows =
        db.Query("PRAGMA foreign_key_list(" + QuoteIdentifier(table.name) + ")");
    // id, seq, table, from, to, on_update, on_delete, match. SQLite numbers
    // constraints last-declared first; restore declaration order.
    std::stable_sort(fk_rows.begin(), fk_rows.end(), [](const auto& a, const auto& b) {
      return std::stoi(a[0]) > std::stoi(b[0]);
    });
    for (const auto& fk : fk_rows) {
      const TableSchema* parent = catalog.FindTable(fk[2]);
      if (parent == nullptr || table.FindColumn(fk[3]) == nullptr) continue;
      std::string parent_column = fk[4];
      if (parent_column.empty()) {
        for (const auto& c : parent->columns)
          if (c.is_primary_key) parent_column = c.name;
      }
      const ColumnSchema* pc = parent->FindColumn(parent_column);
      if (pc == nullptr) continue;
      catalog.foreign_keys.push_back(
          {table.name, table.FindColumn(fk[3])->name, parent->name, pc->name});
    }
  }
  return catalog;
}

DatasetFormat ParseDatasetFormat(std::string_view name) {
  if (name == "bird-json" || name == "bird") return DatasetFormat::kBirdJson;
  if (name == "spider-json" || name == "spider") return DatasetFormat::kSpiderJson;
  throw ConfigError("unknown dataset format: " + std::string(name));
}

std::vector<BenchmarkInstance> LoadInstances(const std::filesystem::path& path,
                                             DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read dataset file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (Trim(text).empty()) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("malformed dataset file " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw DataError("dataset file must hold a JSON array");

  std::vector<BenchmarkInstance> instances;
  instances.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const json& record = doc[i];
    if (!record.is_object()) {
      throw DataError("record " + std::to_string(i) + ": not an object");
    }
    BenchmarkInstance inst;
    inst.db_id = RequireString(record, "db_id", i);
    inst.question = RequireString(record, "question", i);
    if (format == DatasetFormat::kBirdJson) {
      inst.gold_sql = RequireString(record, "SQL", i);
      if (auto it = record.find("evidence"); it != record.end() && it->is_string())
        inst.evidence = it->get<std::string>();
      if (auto it = record.find("question_id"); it != record.end() && !it->is_null())
        inst.id = it->is_string() ? it->get<std::string>() : it->dump();
    } else {
      inst.gold_sql = RequireString(record, "query", i);
    }
    if (inst.id.empty()) inst.id = std::to_string(i);
    if (Trim(inst.gold_sql).empty()) {
      inst.excluded = true;
      inst.warning = "empty gold SQL";
    } else {
      try {
        inst.gt_table_count =
            static_cast<int>(ExtractEntities(inst.gold_sql).tables.size());
        if (inst.gt_table_count == 0) {
          inst.excluded = true;
          inst.warning = "gold SQL references no tables";
        }
      } catch (const ParseError& e) {
        inst.excluded = true;
        inst.warning = std::string("gold SQL does not parse: ") + e.what();
      }
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

std::string ComposeQuestion(const BenchmarkInstance& instance,
                            const ComposeOptions& options) {
  if (!options.include_evidence || instance.evidence.empty()) return instance.question;
  if (options.separator_space && !instance.question.empty())
    return instance.question + " " + instance.evidence;
  return instance.question + instance.evidence;
}

std::string StratumLabel(Stratum stratum) {
  switch (stratum) {
    case Stratum::kOne:
      return "1";
    case Stratum::kTwo:
      return "2";
    case Stratum::kThree:
      return "3";
    case Stratum::kMoreThanThree:
      return ">3";
  }
  return "?";
}

Stratum StratumFor(int gt_table_count) {
  if (gt_table_count <= 1) return Stratum::kOne;
  if (gt_table_count == 2) return Stratum::kTwo;
  if (gt_table_count == 3) return Stratum::kThree;
  return Stratum::kMoreThanThree;
}

std::map<Stratum, std::vector<BenchmarkInstance>> Stratify(
    const std::vector<BenchmarkInstance>& instances) {
  std::map<Stratum, std::vector<BenchmarkInstance>> buckets;
  for (Stratum s : kAllStrata) buckets[s];
  for (const auto& inst : instances) buckets[StratumFor(inst.gt_table_count)].push_back(inst);
  return buckets;
}

std::filesystem::path ResolveDatabasePath(const std::filesystem::path& db_root,
                                          const std::string& db_id) {
  for (const char* ext : {".sqlite", ".db", ".sqlite3"}) {
    auto nested = db_root / db_id / (db_id + ext);
    if (std::filesystem::exists(nested)) return nested;
    auto flat = db_root / (db_id + ext);
    if (std::filesystem::exists(flat)) return flat;
  }
  return db_root / db_id / (db_id + ".sqlite");
}

Benchmark::Benchmark(std::vector<BenchmarkInstance> instances,
                     std::filesystem::path db_root)
    : instances_(std::move(instances)), db_root_(std::move(db_root)) {}

std::filesystem::path Benchmark::DatabasePath(const std::string& db_id) const {
  return ResolveDatabasePath(db_root_, db_id);
}

const DatabaseCatalog& Benchmark::Catalog(const std::string& db_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = catalogs_.find(db_id);
  if (it == catalogs_.end()) {
    auto catalog = std::make_shared<const DatabaseCatalog>(
        IntrospectCatalog(ResolveDatabasePath(db_root_, db_id)));
    it = catalogs_.emplace(db_id, std::move(catalog)).first;
  }
  return *it->second;
}

}  // namespace sqlbench
