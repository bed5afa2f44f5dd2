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

#ifndef SQLBENCH_DATASET_H_
#define SQLBENCH_DATASET_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqlbench {

struct ColumnSchema {
  std::string name;
  std::string declared_type;
  bool is_primary_key = false;

  bool operator==(const ColumnSchema&) const = default;
};

struct TableSchema {
  std::string name;
  std::vector<ColumnSchema> columns;

  const ColumnSchema* FindColumn(std::string_view column) const;
  bool operator==(const TableSchema&) const = default;
};

struct ForeignKey {
  std::string child_table;
  std::string child_column;
  std::string parent_table;
  std::string parent_column;

  bool operator==(const ForeignKey&) const = default;
};

// Schema of one benchmark database: tables, columns and foreign keys in the
// engine's declaration order. Names compare case-insensitively.
struct DatabaseCatalog {
  std::string db_id;
  std::vector<TableSchema> tables;
  std::vector<ForeignKey> foreign_keys;

  const TableSchema* FindTable(std::string_view table) const;

  // Checks name uniqueness and foreign-key endpoints; throws CatalogError.
  void Validate() const;

  bool operator==(const DatabaseCatalog&) const = default;
};

// Reads tables, columns, primary keys and foreign keys from a SQLite file.
// Foreign keys whose endpoints do not exist in the file are dropped.
// Throws CatalogError if the file is unreadable or holds no tables.
DatabaseCatalog IntrospectCatalog(const std::filesystem::path& db_path);

struct BenchmarkInstance {
  std::string id;
  std::string db_id;
  std::string question;
  std::string evidence;
  std::string gold_sql;
  int gt_table_count = 0;
  // Set when gold_sql does not parse; such instances are not scored.
  bool excluded = false;
  std::string warning;
};

enum class DatasetFormat { kBirdJson, kSpiderJson };

DatasetFormat ParseDatasetFormat(std::string_view name);

// Loads a BIRD- or Spider-style JSON array. Throws DataError naming the
// offending record index on malformed input.
std::vector<BenchmarkInstance> LoadInstances(const std::filesystem::path& path,
                                             DatasetFormat format);

struct ComposeOptions {
  bool include_evidence = true;
  // Puts one space between question and evidence; off by default so the
  // texts are adjoined directly.
  bool separator_space = false;
};

std::string ComposeQuestion(const BenchmarkInstance& instance,
                            const ComposeOptions& options = {});

enum class Stratum { kOne, kTwo, kThree, kMoreThanThree };

inline constexpr Stratum kAllStrata[] = {Stratum::kOne, Stratum::kTwo,
                                         Stratum::kThree,
                                         Stratum::kMoreThanThree};

std::string StratumLabel(Stratum stratum);
Stratum StratumFor(int gt_table_count);

std::map<Stratum, std::vector<BenchmarkInstance>> Stratify(
    const std::vector<BenchmarkInstance>& instances);

// Instances plus their databases laid out as <db_root>/<db_id>/<db_id>.sqlite.
// Catalogs are introspected lazily and cached; safe to share across threads.
class Benchmark {
 public:
  Benchmark(std::vector<BenchmarkInstance> instances,
            std::filesystem::path db_root);

  const std::vector<BenchmarkInstance>& instances() const { return instances_; }
  const std::filesystem::path& db_root() const { return db_root_; }

  std::filesystem::path DatabasePath(const std::string& db_id) const;
  const DatabaseCatalog& Catalog(const std::string& db_id) const;

 private:
  std::vector<BenchmarkInstance> instances_;
  std::filesystem::path db_root_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const DatabaseCatalog>> catalogs_;
};

std::filesystem::path ResolveDatabasePath(const std::filesystem::path& db_root,
                                          const std::string& db_id);

}  // namespace sqlbench

#endif  // SQLBENCH_DATASET_H_
