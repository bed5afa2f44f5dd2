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

#ifndef SQLBENCH_METRICS_H_
#define SQLBENCH_METRICS_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqlbench {

struct RetrievalResult {
  std::set<std::string> gt_tables;
  std::set<std::string> retrieved_tables;

  // Lowercases both sets; throws ArgumentError if gt_tables ends up empty.
  static RetrievalResult Make(const std::set<std::string>& gt,
                              const std::set<std::string>& retrieved);
};

struct RougeScores {
  double rouge1 = 0;
  double rouge2 = 0;
  double rouge_l = 0;
};

struct ScoredInstance {
  std::string id;
  bool ex = false;
  // R = sqrt(E(gold) / E(pred)); present only for correct, timed instances.
  std::optional<double> r_efficiency;
  // Correct but timing failed: counts as R = 1.
  bool timing_failed = false;
  std::optional<RetrievalResult> linking;
  std::optional<RougeScores> rouge;
  // Consistency verdicts with (pred, gold) and (gold, pred) order.
  std::optional<std::pair<bool, bool>> llm_consistency;
};

// R(gold, pred) from the two efficiencies (reciprocal durations).
double EfficiencyRatio(double gold_efficiency, double pred_efficiency);

double Ex(const std::vector<ScoredInstance>& scored);
double Ves(const std::vector<ScoredInstance>& scored);
// Absent when no instance is correct.
std::optional<double> Cves(const std::vector<ScoredInstance>& scored);

double Res(const std::vector<RetrievalResult>& results);
double SubsetMatch(const std::vector<RetrievalResult>& results);
double ExactMatch(const std::vector<RetrievalResult>& results);

std::vector<std::string> RougeTokenize(std::string_view text);
RougeScores RougeF1(std::string_view candidate, std::string_view reference);

double ConsistencyRate(const std::vector<std::pair<bool, bool>>& verdicts);

}  // namespace sqlbench

#endif  // SQLBENCH_METRICS_H_
