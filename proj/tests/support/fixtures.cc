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


#include "fixtures.h"

#include <sqlite3.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fs = std::filesystem;

namespace sqlbench_test {
namespace {

void BuildDatabase(const fs::path& script, const fs::path& target) {
  fs::create_directories(target.parent_path());
  const fs::path tmp =
      target.string() + ".tmp" + std::to_string(static_cast<long>(::getpid()));
  fs::remove(tmp);
  sqlite3* db = nullptr;
  if (sqlite3_open(tmp.c_str(), &db) != SQLITE_OK) {
    sqlite3_close(db);
    throw std::runtime_error("cannot create " + tmp.string());
  }
  char* error = nullptr;
  const std::string sql = ReadFile(script);
  const int rc = sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &error);
  std::string message = error ? error : "";
  sqlite3_free(error);
  sqlite3_close(db);
  if (rc != SQLITE_OK) {
    fs::remove(tmp);
    throw std::runtime_error(script.string() + ": " + message);
  }
  fs::rename(tmp, target);
}

}  // namespace

fs::path TestSourceDir() { return SQLBENCH_TEST_SOURCE_DIR; }

fs::path FixtureDbRoot() {
  static std::once_flag once;
  static fs::path root = SQLBENCH_FIXTURE_BUILD_DIR;
  std::call_once(once, [] {
    for (const auto& entry : fs::directory_iterator(TestSourceDir() / "fixtures" / "db")) {
      if (entry.path().extension() != ".sql") continue;
      const std::string db_id = entry.path().stem().string();
      const fs::path target = root / db_id / (db_id + ".sqlite");
      if (fs::exists(target) &&
          fs::last_write_time(target) >= fs::last_write_time(entry.path())) {
        continue;
      }
      BuildDatabase(entry.path(), target);
    }
  });
  return root;
}

fs::path FixtureDb(const std::string& db_id) {
  return FixtureDbRoot() / db_id / (db_id + ".sqlite");
}

const sqlbench::DatabaseCatalog& FixtureCatalog(const std::string& db_id) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<sqlbench::DatabaseCatalog>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[db_id];
  if (!slot) {
    slot = std::make_unique<sqlbench::DatabaseCatalog>(
        sqlbench::IntrospectCatalog(FixtureDb(db_id)));
  }
  return *slot;
}

fs::path FixtureFile(std::string_view relative) {
  return TestSourceDir() / "fixtures" / relative;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("sqlbench_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++) + "_" + std::to_string(rd() % 100000));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

bool MatchGolden(std::string_view golden, std::string_view actual,
                 std::string* mismatch) {
  std::vector<std::string_view> pieces;
  size_t start = 0;
  while (true) {
    const size_t at = golden.find(kElided, start);
    if (at == std::string_view::npos) {
      pieces.push_back(golden.substr(start));
      break;
    }
    pieces.push_back(golden.substr(start, at - start));
    start = at + kElided.size();
  }
  auto fail = [&](const std::string& why) {
    if (mismatch) *mismatch = why;
    return false;
  };
  if (pieces.size() == 1) {
    if (golden == actual) return true;
    size_t i = 0;
    while (i < golden.size() && i < actual.size() && golden[i] == actual[i]) ++i;
    return fail("first difference at byte " + std::to_string(i) + ": expected \"" +
                std::string(golden.substr(i, 40)) + "\", got \"" +
                std::string(actual.substr(i, 40)) + "\"");
  }
  if (actual.substr(0, pieces.front().size()) != pieces.front()) {
    return fail("prefix differs: expected \"" + std::string(pieces.front()) + "\"");
  }
  size_t pos = pieces.front().size();
  for (size_t i = 1; i + 1 < pieces.size(); ++i) {
    const size_t at = actual.find(pieces[i], pos);
    if (at == std::string_view::npos) {
      return fail("missing region: \"" + std::string(pieces[i]) + "\"");
    }
    pos = at + pieces[i].size();
  }
  const std::string_view last = pieces.back();
  if (actual.size() < pos + last.size() ||
      actual.substr(actual.size() - last.size()) != last) {
    return fail("suffix differs: expected \"" + std::string(last) + "\"");
  }
  return true;
}

}  // namespace sqlbench_test
