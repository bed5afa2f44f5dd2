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

#ifndef SQLBENCH_EXECUTOR_H_
#define SQLBENCH_EXECUTOR_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sqlbench {

struct Blob {
  std::vector<unsigned char> bytes;
  auto operator<=>(const Blob&) const = default;
};

// NULL, INTEGER, REAL, TEXT, BLOB.
using Value = std::variant<std::monostate, int64_t, double, std::string, Blob>;
using Row = std::vector<Value>;

std::string ValueToString(const Value& value);

enum class ExecutionStatus { kOk, kEngineError, kTimeout };

std::string ExecutionStatusName(ExecutionStatus status);

struct ExecutionOutcome {
  ExecutionStatus status = ExecutionStatus::kOk;
  std::vector<Row> rows;
  std::string error_message;
  std::chrono::nanoseconds elapsed{0};

  bool ok() const { return status == ExecutionStatus::kOk; }
};

inline constexpr std::chrono::seconds kDefaultTimeout{60};

// Runs one statement on a read-only connection. Statements that could write
// are refused before the first step.
ExecutionOutcome Execute(const std::filesystem::path& db_path,
                         std::string_view sql,
                         std::chrono::nanoseconds timeout = kDefaultTimeout);

inline constexpr double kNumericTolerance = 1e-6;

// Execution-accuracy indicator. Rows compare as multisets unless gold_sql
// orders its outermost result.
bool ResultsMatch(const ExecutionOutcome& pred, const ExecutionOutcome& gold,
                  std::string_view gold_sql);

bool ValuesEqual(const Value& a, const Value& b);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::nanoseconds Now() = 0;
};

class SteadyClock : public Clock {
 public:
  std::chrono::nanoseconds Now() override;
};

// Advances by a fixed step on every reading, so each timed span equals step.
class StepClock : public Clock {
 public:
  explicit StepClock(std::chrono::nanoseconds step) : step_(step) {}
  std::chrono::nanoseconds Now() override;

 private:
  std::chrono::nanoseconds step_;
  std::chrono::nanoseconds now_{0};
};

struct TimingProtocol {
  int warmups = 1;
  int repetitions = 5;
  std::chrono::nanoseconds timeout = kDefaultTimeout;

  void Validate() const;
};

struct TimingProfile {
  std::vector<std::chrono::nanoseconds> samples;
  TimingProtocol protocol;
  double median_seconds = 0;
  // Executions per second: reciprocal of the median sample.
  double efficiency = 0;
};

double MedianSeconds(const std::vector<std::chrono::nanoseconds>& samples);

// Warmups then timed repetitions, holding the process-wide timing lock so no
// other query runs meanwhile. Throws TimingError if any run fails.
TimingProfile TimeQuery(const std::filesystem::path& db_path,
                        std::string_view sql, const TimingProtocol& protocol,
                        Clock* clock = nullptr);

}  // namespace sqlbench

#endif  // SQLBENCH_EXECUTOR_H_
