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

#include "sqlbench/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "sqlbench/error.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

double InstanceR(const ScoredInstance& s) {
  if (s.r_efficiency) return *s.r_efficiency;
  return 1.0;
}

double F1(double overlap, double candidate_count, double reference_count) {
  if (overlap == 0 || candidate_count == 0 || reference_count == 0) return 0;
  const double p = overlap / candidate_count;
  const double r = overlap / reference_count;
  return 2 * p * r / (p + r);
}

double NgramF1(const std::vector<std::string>& cand,
               const std::vector<std::string>& ref, size_t n) {
  auto grams = [n](const std::vector<std::string>& tokens) {
    std::map<std::vector<std::string>, int> counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
      ++counts[std::vector<std::string>(tokens.begin() + i,
                                        tokens.begin() + i + n)];
    }
    return counts;
  };
  const auto c = grams(cand);
  const auto r = grams(ref);
  double overlap = 0, c_total = 0, r_total = 0;
  for (const auto& [gram, count] : c) {
    c_total += count;
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  for (const auto& [gram, count] : r) r_total += count;
  return F1(overlap, c_total, r_total);
}

size_t LcsLength(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

RetrievalResult RetrievalResult::Make(const std::set<std::string>& gt,
                                      const std::set<std::string>& retrieved) {
  RetrievalResult out;
  for (const auto& t : gt) out.gt_tables.insert(ToLower(t));
  for (const auto& t : retrieved) out.retrieved_tables.insert(ToLower(t));
  if (out.gt_tables.empty()) throw ArgumentError("ground-truth table set is empty");
  return out;
}

double EfficiencyRatio(double gold_efficiency, double pred_efficiency) {
  if (gold_efficiency <= 0 || pred_efficiency <= 0) {
    throw ArgumentError("efficiencies must be positive");
  }
  return std::sqrt(pred_efficiency / gold_efficiency);
}

double Ex(const std::vector<ScoredInstance>& scored) {
  if (scored.empty()) return 0;
  double correct = 0;
  for (const auto& s : scored) correct += s.ex;
  return correct / scored.size() * 100;
}

double Ves(const std::vector<ScoredInstance>& scored) {
  if (scored.empty()) return 0;
  double sum = 0;
  for (const auto& s : scored) {
    if (s.ex) sum += InstanceR(s);
  }
  return sum / scored.size() * 100;
}

std::optional<double> Cves(const std::vector<ScoredInstance>& scored) {
  double sum = 0;
  size_t correct = 0;
  for (const auto& s : scored) {
    if (!s.ex) continue;
    sum += InstanceR(s);
    ++correct;
  }
  if (correct == 0) return std::nullopt;
  return sum / correct * 100;
}

double Res(const std::vector<RetrievalResult>& results) {
  if (results.empty()) return 0;
  double sum = 0;
  for (const auto& r : results) {
    const bool covered = std::includes(r.retrieved_tables.begin(),
                                       r.retrieved_tables.end(),
                                       r.gt_tables.begin(), r.gt_tables.end());
    if (covered) {
      sum += std::sqrt(static_cast<double>(r.gt_tables.size()) /
                       r.retrieved_tables.size());
    }
  }
  return sum / results.size();
}

double SubsetMatch(const std::vector<RetrievalResult>& results) {
  if (results.empty()) return 0;
  double hits = 0;
  for (const auto& r : results) {
    hits += std::includes(r.retrieved_tables.begin(), r.retrieved_tables.end(),
                          r.gt_tables.begin(), r.gt_tables.end());
  }
  return hits / results.size();
}

double ExactMatch(const std::vector<RetrievalResult>& results) {
  if (results.empty()) return 0;
  double hits = 0;
  for (const auto& r : results) hits += r.gt_tables == r.retrieved_tables;
  return hits / results.size();
}

std::vector<std::string> RougeTokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

RougeScores RougeF1(std::string_view candidate, std::string_view reference) {
  const auto cand = RougeTokenize(candidate);
  const auto ref = RougeTokenize(reference);
  RougeScores scores;
  if (cand.empty() || ref.empty()) return scores;
  scores.rouge1 = NgramF1(cand, ref, 1);
  // Identical single-token texts have no bigrams; they still match fully.
  scores.rouge2 = cand.size() == 1 && cand == ref ? 1.0 : NgramF1(cand, ref, 2);
  scores.rouge_l = F1(static_cast<double>(LcsLength(cand, ref)),
                      static_cast<double>(cand.size()),
                      static_cast<double>(ref.size()));
  return scores;
}

double ConsistencyRate(const std::vector<std::pair<bool, bool>>& verdicts) {
  if (verdicts.empty()) return 0;
  double forward = 0, backward = 0;
  for (const auto& [ab, ba] : verdicts) {
    forward += ab;
    backward += ba;
  }
  const double n = static_cast<double>(verdicts.size());
  return (forward / n * 100 + backward / n * 100) / 2;
}

}  // namespace sqlbench
