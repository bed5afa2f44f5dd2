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


#ifndef SQLBENCH_TESTS_SUPPORT_FIXTURES_H_
#define SQLBENCH_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "sqlbench/dataset.h"

namespace sqlbench_test {

// tests/ in the source tree.
std::filesystem::path TestSourceDir();

// Builds every tests/fixtures/db/*.sql script into <root>/<db>/<db>.sqlite
// (once per process, skipped when up to date) and returns <root>.
std::filesystem::path FixtureDbRoot();
std::filesystem::path FixtureDb(const std::string& db_id);
const sqlbench::DatabaseCatalog& FixtureCatalog(const std::string& db_id);

std::filesystem::path FixtureFile(std::string_view relative);
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view text);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline constexpr std::string_view kElided = "<<ELIDED>>";

// Every run of text between elision markers must appear in order; the first
// and last runs are anchored to the start and end of `actual`.
bool MatchGolden(std::string_view golden, std::string_view actual,
                 std::string* mismatch = nullptr);

}  // namespace sqlbench_test

#endif  // SQLBENCH_TESTS_SUPPORT_FIXTURES_H_
