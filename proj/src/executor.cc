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

#include "sqlbench/executor.h"

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <shared_mutex>

#include "sqlbench/error.h"
#include "sqlbench/sqlanalysis.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

using Nanos = std::chrono::nanoseconds;

// Scoring executions share the lock; timing takes it exclusively.
std::shared_mutex& TimingMutex() {
  static std::shared_mutex mu;
  return mu;
}

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool hit = false;
};

int ProgressCallback(void* arg) {
  auto* deadline = static_cast<Deadline*>(arg);
  if (std::chrono::steady_clock::now() >= deadline->at) {
    deadline->hit = true;
    return 1;
  }
  return 0;
}

class Connection {
 public:
  explicit Connection(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw DataError("database file not found: " + path.string());
    }
    int rc = sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READONLY, nullptr);
    if (rc != SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : sqlite3_errstr(rc);
      sqlite3_close(db_);
      throw DataError("cannot open " + path.string() + ": " + msg);
    }
    sqlite3_exec(db_, "PRAGMA query_only = ON", nullptr, nullptr, nullptr);
  }
  ~Connection() { sqlite3_close(db_); }
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;

  sqlite3* get() const { return db_; }

 private:
  sqlite3* db_ = nullptr;
};

Value ReadValue(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_INTEGER:
      return static_cast<int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return sqlite3_column_double(stmt, col);
    case SQLITE_TEXT: {
      const auto* text = sqlite3_column_text(stmt, col);
      return std::string(reinterpret_cast<const char*>(text),
                         sqlite3_column_bytes(stmt, col));
    }
    case SQLITE_BLOB: {
      const auto* data =
          static_cast<const unsigned char*>(sqlite3_column_blob(stmt, col));
      Blob blob;
      blob.bytes.assign(data, data + sqlite3_column_bytes(stmt, col));
      return blob;
    }
    default:
      return std::monostate{};
  }
}

bool OnlyCommentsOrSpace(sqlite3* db, const char* tail) {
  // Preparing the remainder yields no statement for whitespace, comments and
  // bare semicolons.
  while (tail && *tail) {
    sqlite3_stmt* next = nullptr;
    const char* rest = nullptr;
    if (sqlite3_prepare_v2(db, tail, -1, &next, &rest) != SQLITE_OK) {
      return false;
    }
    if (next != nullptr) {
      sqlite3_finalize(next);
      return false;
    }
    if (rest == tail) break;
    tail = rest;
  }
  return true;
}

ExecutionOutcome RunOn(sqlite3* db, std::string_view sql, Nanos timeout) {
  ExecutionOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  Deadline deadline{start + std::chrono::duration_cast<
                                std::chrono::steady_clock::duration>(timeout)};
  sqlite3_progress_handler(db, 1000, ProgressCallback, &deadline);

  auto fail = [&](ExecutionStatus status, std::string message) {
    outcome.status = status;
    outcome.rows.clear();
    outcome.error_message = std::move(message);
  };

  const std::string text(sql);
  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  int rc = sqlite3_prepare_v2(db, text.c_str(), -1, &stmt, &tail);
  if (rc != SQLITE_OK) {
    fail(ExecutionStatus::kEngineError, sqlite3_errmsg(db));
  } else if (stmt == nullptr) {
    fail(ExecutionStatus::kEngineError, "empty statement");
  } else if (!sqlite3_stmt_readonly(stmt)) {
    fail(ExecutionStatus::kEngineError,
         "write statement rejected: the benchmark database is read-only");
  } else if (!OnlyCommentsOrSpace(db, tail)) {
    fail(ExecutionStatus::kEngineError,
         "only one statement can be executed at a time");
  } else {
    const int columns = sqlite3_column_count(stmt);
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
      Row row;
      row.reserve(columns);
      for (int c = 0; c < columns; ++c) row.push_back(ReadValue(stmt, c));
      outcome.rows.push_back(std::move(row));
    }
    if (rc != SQLITE_DONE) {
      if (deadline.hit) {
        fail(ExecutionStatus::kTimeout, "query exceeded the time budget");
      } else {
        fail(ExecutionStatus::kEngineError, sqlite3_errmsg(db));
      }
    }
  }
  sqlite3_finalize(stmt);
  sqlite3_progress_handler(db, 0, nullptr, nullptr);
  outcome.elapsed = std::chrono::duration_cast<Nanos>(
      std::chrono::steady_clock::now() - start);
  return outcome;
}

// Rank by storage class; INTEGER and REAL share one numeric class.
int ClassRank(const Value& v) {
  switch (v.index()) {
    case 0: return 0;
    case 1:
    case 2: return 1;
    case 3: return 2;
    default: return 3;
  }
}

double AsDouble(const Value& v) {
  if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

bool ValueLess(const Value& a, const Value& b) {
  const int ra = ClassRank(a);
  const int rb = ClassRank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 0: return false;
    case 1: return AsDouble(a) < AsDouble(b);
    case 2: return std::get<std::string>(a) < std::get<std::string>(b);
    default: return std::get<Blob>(a) < std::get<Blob>(b);
  }
}

bool RowLess(const Row& a, const Row& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      ValueLess);
}

bool RowsEqual(const Row& a, const Row& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!ValuesEqual(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

std::string ValueToString(const Value& value) {
  switch (value.index()) {
    case 0: return "NULL";
    case 1: return std::to_string(std::get<int64_t>(value));
    case 2: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(value));
      return buf;
    }
    case 3: return std::get<std::string>(value);
    default: {
      static const char* kHex = "0123456789ABCDEF";
      std::string out = "X'";
      for (unsigned char c : std::get<Blob>(value).bytes) {
        out += kHex[c >> 4];
        out += kHex[c & 15];
      }
      return out + "'";
    }
  }
}

std::string ExecutionStatusName(ExecutionStatus status) {
  switch (status) {
    case ExecutionStatus::kOk: return "ok";
    case ExecutionStatus::kEngineError: return "engine_error";
    case ExecutionStatus::kTimeout: return "timeout";
  }
  return "ok";
}

ExecutionOutcome Execute(const std::filesystem::path& db_path,
                         std::string_view sql, Nanos timeout) {
  std::shared_lock lock(TimingMutex());
  Connection connection(db_path);
  return RunOn(connection.get(), sql, timeout);
}

bool ValuesEqual(const Value& a, const Value& b) {
  const int ra = ClassRank(a);
  if (ra != ClassRank(b)) return false;
  switch (ra) {
    case 0: return true;
    case 1: return std::fabs(AsDouble(a) - AsDouble(b)) <= kNumericTolerance;
    case 2: return std::get<std::string>(a) == std::get<std::string>(b);
    default: return std::get<Blob>(a) == std::get<Blob>(b);
  }
}

bool ResultsMatch(const ExecutionOutcome& pred, const ExecutionOutcome& gold,
                  std::string_view gold_sql) {
  if (!pred.ok() || !gold.ok()) return false;
  if (pred.rows.size() != gold.rows.size()) return false;
  if (HasTopLevelOrderBy(gold_sql)) {
    for (size_t i = 0; i < pred.rows.size(); ++i) {
      if (!RowsEqual(pred.rows[i], gold.rows[i])) return false;
    }
    return true;
  }
  std::vector<Row> a = pred.rows;
  std::vector<Row> b = gold.rows;
  std::sort(a.begin(), a.end(), RowLess);
  std::sort(b.begin(), b.end(), RowLess);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!RowsEqual(a[i], b[i])) return false;
  }
  return true;
}

Nanos SteadyClock::Now() {
  return std::chrono::duration_cast<Nanos>(
      std::chrono::steady_clock::now().time_since_epoch());
}

Nanos StepClock::Now() {
  now_ += step_;
  return now_;
}

void TimingProtocol::Validate() const {
  if (warmups < 0) throw ConfigError("timing warmups must be >= 0");
  if (repetitions < 1) throw ConfigError("timing repetitions must be >= 1");
  if (timeout <= Nanos::zero()) throw ConfigError("timing timeout must be > 0");
}

double MedianSeconds(const std::vector<Nanos>& samples) {
  if (samples.empty()) throw TimingError("no timing samples");
  std::vector<double> seconds;
  for (auto s : samples) seconds.push_back(std::chrono::duration<double>(s).count());
  std::sort(seconds.begin(), seconds.end());
  const size_t n = seconds.size();
  return n % 2 ? seconds[n / 2] : (seconds[n / 2 - 1] + seconds[n / 2]) / 2;
}

TimingProfile TimeQuery(const std::filesystem::path& db_path,
                        std::string_view sql, const TimingProtocol& protocol,
                        Clock* clock) {
  protocol.Validate();
  SteadyClock steady;
  if (clock == nullptr) clock = &steady;
  std::unique_lock lock(TimingMutex());
  Connection connection(db_path);
  TimingProfile profile;
  profile.protocol = protocol;
  for (int i = 0; i < protocol.warmups + protocol.repetitions; ++i) {
    const Nanos begin = clock->Now();
    ExecutionOutcome outcome = RunOn(connection.get(), sql, protocol.timeout);
    const Nanos end = clock->Now();
    if (!outcome.ok()) {
      throw TimingError("timed run " + std::to_string(i + 1) + " failed (" +
                        ExecutionStatusName(outcome.status) +
                        "): " + outcome.error_message);
    }
    if (i >= protocol.warmups) profile.samples.push_back(end - begin);
  }
  profile.median_seconds = MedianSeconds(profile.samples);
  // A sub-resolution median is clamped to one nanosecond.
  profile.efficiency = 1.0 / std::max(profile.median_seconds, 1e-9);
  return profile;
}

}  // namespace sqlbench
