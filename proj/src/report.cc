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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sqlbench/error.h"
#include "sqlbench/metrics.h"
#include "sqlbench/pipeline.h"
#include "sqlbench/strings.h"

namespace sqlbench {

using nlohmann::json;

namespace {

bool Scored(const json& e) { return !e.value("excluded", false); }

json ScoredCount(const std::vector<json>& entries) {
  size_t n = 0;
  for (const auto& e : entries) n += Scored(e);
  return n;
}

json Percent(size_t part, size_t whole) {
  if (whole == 0) return nullptr;
  return static_cast<double>(part) / whole * 100;
}

json AggregateText2Sql(const std::vector<json>& entries) {
  std::map<std::string, std::pair<size_t, size_t>> strata;
  size_t count = 0, correct = 0, system = 0, result = 0, extraction = 0;
  for (const auto& e : entries) {
    if (!Scored(e)) continue;
    const bool ok = e.value("correct", false);
    auto& bucket = strata[e.value("stratum", "1")];
    ++bucket.first;
    bucket.second += ok;
    ++count;
    correct += ok;
    const std::string kind = e["error_kind"].is_string() ? e["error_kind"].get<std::string>() : "";
    system += kind == "system";
    result += kind == "result";
    extraction += e.contains("extraction_error");
  }
  json rows = json::array();
  for (Stratum s : kAllStrata) {
    const auto [n, c] = strata[StratumLabel(s)];
    rows.push_back({{"stratum", StratumLabel(s)}, {"count", n}, {"correct", c},
                    {"ex", Percent(c, n)}});
  }
  return {{"scored", count},
          {"excluded", entries.size() - count},
          {"ex", Percent(correct, count)},
          {"strata", rows},
          {"total", {{"stratum", "Total"}, {"count", count}, {"correct", correct},
                     {"ex", Percent(correct, count)}}},
          {"system_errors", system},
          {"result_errors", result},
          {"extraction_failures", extraction}};
}

json AggregateDebug(const json& config, const std::vector<json>& entries) {
  const int rounds = config.value("rounds", 1);
  json out = json::array();
  std::vector<std::string> names;
  if (config.contains("strategies")) {
    for (const auto& s : config["strategies"]) names.push_back(s.get<std::string>());
  }
  for (const auto& name : names) {
    size_t scored = 0, prior_correct = 0;
    std::vector<size_t> fixed_by(rounds + 1, 0);
    std::vector<size_t> system(rounds + 1, 0), result(rounds + 1, 0);
    std::map<std::string, size_t> subcategories;
    for (const auto& e : entries) {
      if (!Scored(e)) continue;
      ++scored;
      if (e.value("prior_correct", false)) {
        ++prior_correct;
        continue;
      }
      const std::string k0 =
          e["prior_error_kind"].is_string() ? e["prior_error_kind"].get<std::string>() : "";
      system[0] += k0 == "system";
      result[0] += k0 == "result";
      const json empty = json::array();
      const json& history = e.contains("strategies") && e["strategies"].contains(name)
                                ? e["strategies"][name]
                                : empty;
      if (!history.empty() && history[0].contains("diagnosis") &&
          history[0]["diagnosis"].contains("subcategory")) {
        ++subcategories[history[0]["diagnosis"]["subcategory"].get<std::string>()];
      }
      int fixed_round = 0;
      for (const auto& step : history) {
        if (step.value("correct", false)) fixed_round = step.value("round", 0);
      }
      for (int r = 1; r <= rounds; ++r) {
        if (fixed_round != 0 && fixed_round <= r) {
          ++fixed_by[r];
          continue;
        }
        const size_t last = std::min<size_t>(r, history.size());
        const std::string kind =
            last == 0 ? k0 : history[last - 1].value("error_kind", json("")).get<std::string>();
        system[r] += kind == "system";
        result[r] += kind == "result";
      }
    }
    const size_t wrong = scored - prior_correct;
    json trajectory = json::array();
    for (int r = 0; r <= rounds; ++r) {
      trajectory.push_back(Percent(prior_correct + fixed_by[r], scored));
    }
    json improvement = nullptr;
    if (scored) {
      improvement = trajectory[rounds].get<double>() - trajectory[0].get<double>();
    }
    out.push_back({{"strategy", name},
                   {"title", DebugStrategyTitle(ParseDebugStrategy(name))},
                   {"scored", scored},
                   {"prior_correct", prior_correct},
                   {"wrong", wrong},
                   {"fixed", fixed_by[rounds]},
                   {"fixed_rate", Percent(fixed_by[rounds], wrong)},
                   {"trajectory", trajectory},
                   {"ex_improvement", improvement},
                   {"system_errors", system},
                   {"result_errors", result},
                   {"subcategories", subcategories}});
  }
  return {{"rounds", rounds}, {"strategies", out}};
}

json EfficiencyMetrics(const std::vector<json>& entries, const char* field) {
  std::vector<ScoredInstance> scored;
  size_t timing_failures = 0;
  for (const auto& e : entries) {
    if (!Scored(e) || !e.contains(field)) continue;
    const json& node = e[field];
    ScoredInstance s;
    s.id = e.value("instance_id", "");
    s.ex = node.value("correct", false);
    if (node.contains("r")) s.r_efficiency = node["r"].get<double>();
    s.timing_failed = node.value("timing_failed", false);
    timing_failures += s.ex && s.timing_failed;
    scored.push_back(s);
  }
  json out = {{"scored", scored.size()}, {"timing_failures", timing_failures}};
  out["ex"] = scored.empty() ? json(nullptr) : json(Ex(scored));
  out["ves"] = scored.empty() ? json(nullptr) : json(Ves(scored));
  auto cves = Cves(scored);
  out["cves"] = cves ? json(*cves) : json(nullptr);
  return out;
}

json AggregateOptimization(const json& config, const std::vector<json>& entries) {
  json out = {{"mode", config.contains("optimization")
                           ? config["optimization"].value("mode", "two_stage")
                           : "two_stage"},
              {"optimized", EfficiencyMetrics(entries, "optimized")}};
  if (out["mode"] == "two_stage") out["baseline"] = EfficiencyMetrics(entries, "baseline");
  return out;
}

json AggregateSql2Text(const std::vector<json>& entries) {
  double r1 = 0, r2 = 0, rl = 0;
  size_t n = 0, extraction = 0;
  std::vector<std::pair<bool, bool>> verdicts;
  for (const auto& e : entries) {
    if (!Scored(e) || !e.contains("rouge")) continue;
    ++n;
    r1 += e["rouge"].value("rouge1", 0.0);
    r2 += e["rouge"].value("rouge2", 0.0);
    rl += e["rouge"].value("rougeL", 0.0);
    extraction += e.contains("extraction_error");
    if (e.contains("consistency")) {
      verdicts.emplace_back(e["consistency"][0].get<bool>(),
                            e["consistency"][1].get<bool>());
    }
  }
  json out = {{"scored", n}, {"extraction_failures", extraction}};
  out["rouge1"] = n ? json(r1 / n) : json(nullptr);
  out["rouge2"] = n ? json(r2 / n) : json(nullptr);
  out["rougeL"] = n ? json(rl / n) : json(nullptr);
  out["consistency_rate"] =
      verdicts.empty() ? json(nullptr) : json(ConsistencyRate(verdicts));
  return out;
}

json AggregateLinking(const json& config, const std::vector<json>& entries) {
  std::vector<std::string> methods;
  std::vector<bool> fks;
  if (config.contains("linking")) {
    for (const auto& m : config["linking"].value("methods", json::array())) {
      methods.push_back(m.get<std::string>());
    }
    for (const auto& f : config["linking"].value("fk_settings", json::array())) {
      fks.push_back(f.get<bool>());
    }
  }
  json out = json::array();
  for (const auto& method : methods) {
    for (bool fk : fks) {
      std::vector<RetrievalResult> results;
      for (const auto& e : entries) {
        if (!Scored(e) || !e.contains("linking")) continue;
        for (const auto& r : e["linking"]) {
          if (r.value("method", "") != method || r.value("with_fk", false) != fk) {
            continue;
          }
          results.push_back(RetrievalResult::Make(
              e["gt_tables"].get<std::set<std::string>>(),
              r["retrieved"].get<std::set<std::string>>()));
        }
      }
      json cell = {{"method", method},
                   {"title", LinkingMethodTitle(ParseLinkingMethod(method))},
                   {"with_fk", fk},
                   {"count", results.size()}};
      cell["res"] = results.empty() ? json(nullptr) : json(Res(results));
      cell["subset_match"] = results.empty() ? json(nullptr) : json(SubsetMatch(results));
      cell["exact_match"] = results.empty() ? json(nullptr) : json(ExactMatch(results));
      out.push_back(std::move(cell));
    }
  }
  return {{"scored", ScoredCount(entries)}, {"cells", out}};
}

}  // namespace

json AggregateEntries(Task task, const json& config,
                      const std::vector<json>& entries) {
  switch (task) {
    case Task::kText2Sql: return AggregateText2Sql(entries);
    case Task::kSelfDebug:
    case Task::kGeneralDebug: return AggregateDebug(config, entries);
    case Task::kOptimization: return AggregateOptimization(config, entries);
    case Task::kSql2Text: return AggregateSql2Text(entries);
    case Task::kSchemaLinking: return AggregateLinking(config, entries);
  }
  return json::object();
}

RunRecord LoadRunRecord(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read run record " + path.string());
  RunRecord record;
  bool have_header = false;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": not a JSON object");
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      record.run_id = j.value("run_id", "");
      record.task = ParseTask(j.value("task", ""));
      record.config = j.value("config", json::object());
      have_header = true;
    } else if (type == "entry") {
      record.entries.push_back(std::move(j));
    } else if (type == "aggregate") {
      record.aggregate = j.value("metrics", json::object());
    } else {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": unknown line type '" + type + "'");
    }
  }
  if (!have_header) throw DataError("run record has no header: " + path.string());
  std::stable_sort(record.entries.begin(), record.entries.end(),
                   [](const json& a, const json& b) {
                     return a.value("index", 0) < b.value("index", 0);
                   });
  if (record.aggregate.is_null()) {
    record.aggregate = AggregateEntries(record.task, record.config, record.entries);
  }
  return record;
}

void WriteRunRecord(const RunRecord& record, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write run record " + path.string());
  out << json{{"type", "header"},
              {"run_id", record.run_id},
              {"task", TaskName(record.task)},
              {"config", record.config}}
             .dump()
      << "\n";
  for (const auto& e : record.entries) out << e.dump() << "\n";
  out << json{{"type", "aggregate"}, {"metrics", record.aggregate}}.dump() << "\n";
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw ConfigError("unknown report format '" + std::string(name) + "'");
}

namespace {

struct Table {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

std::string Fixed(const json& v, int digits) {
  if (!v.is_number()) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v.get<double>());
  return buf;
}

std::string Count(const json& v) {
  return v.is_number() ? std::to_string(v.get<int64_t>()) : "-";
}

std::vector<Table> Text2SqlTables(const json& agg) {
  Table t{"EX (%) by number of GT tables",
          {"No. of GT Tables", "Instances", "Correct", "EX (%)"},
          {}};
  if (agg.value("scored", 0) > 0) {
    for (const auto& row : agg["strata"]) {
      t.rows.push_back({row["stratum"].get<std::string>(), Count(row["count"]),
                        Count(row["correct"]), Fixed(row["ex"], 2)});
    }
    const json& total = agg["total"];
    t.rows.push_back({"Total", Count(total["count"]), Count(total["correct"]),
                      Fixed(total["ex"], 2)});
  }
  return {t};
}

std::vector<Table> DebugTables(const json& agg) {
  const int rounds = agg.value("rounds", 1);
  Table ex{"EX (%) after each debug round", {"Strategy"}, {}};
  for (int r = 0; r <= rounds; ++r) ex.headers.push_back("Round " + std::to_string(r));
  ex.headers.push_back("Fixed (%)");
  ex.headers.push_back("EX gain");
  Table errors{"Remaining errors by round",
               {"Strategy", "Round", "System Error", "Result Error"},
               {}};
  for (const auto& s : agg.value("strategies", json::array())) {
    if (s.value("scored", 0) == 0) continue;
    std::vector<std::string> row = {s["title"].get<std::string>()};
    for (const auto& v : s["trajectory"]) row.push_back(Fixed(v, 2));
    row.push_back(Fixed(s["fixed_rate"], 2));
    row.push_back(Fixed(s["ex_improvement"], 2));
    ex.rows.push_back(std::move(row));
    for (int r = 0; r <= rounds; ++r) {
      errors.rows.push_back({s["title"].get<std::string>(), std::to_string(r),
                             Count(s["system_errors"][r]), Count(s["result_errors"][r])});
    }
  }
  return {ex, errors};
}

std::vector<Table> OptimizationTables(const json& agg) {
  Table t{"Execution efficiency", {"Method", "EX (%)", "VES", "C-VES", "Timing failures"}, {}};
  auto add = [&](const std::string& name, const json& m) {
    if (m.value("scored", 0) == 0) return;
    t.rows.push_back({name, Fixed(m["ex"], 2), Fixed(m["ves"], 2), Fixed(m["cves"], 2),
                      Count(m["timing_failures"])});
  };
  if (agg.contains("baseline")) add("Baseline", agg["baseline"]);
  add(agg.value("mode", "") == "direct" ? "Direct Generation" : "Two-Stage Generation",
      agg["optimized"]);
  return {t};
}

std::vector<Table> Sql2TextTables(const json& agg) {
  Table t{"SQL-to-Text", {"Metric", "Value"}, {}};
  if (agg.value("scored", 0) > 0) {
    t.rows.push_back({"Rouge-1", Fixed(agg["rouge1"], 3)});
    t.rows.push_back({"Rouge-2", Fixed(agg["rouge2"], 3)});
    t.rows.push_back({"Rouge-L", Fixed(agg["rougeL"], 3)});
    const json& rate = agg["consistency_rate"];
    t.rows.push_back({"LLM Evaluator", rate.is_number() ? Fixed(rate, 1) + "%" : "-"});
  }
  return {t};
}

std::vector<Table> LinkingTables(const json& agg) {
  std::vector<std::string> methods;
  std::vector<bool> fks;
  for (const auto& c : agg.value("cells", json::array())) {
    const std::string title = c["title"].get<std::string>();
    if (std::find(methods.begin(), methods.end(), title) == methods.end()) {
      methods.push_back(title);
    }
    const bool fk = c["with_fk"].get<bool>();
    if (std::find(fks.begin(), fks.end(), fk) == fks.end()) fks.push_back(fk);
  }
  std::vector<Table> tables;
  for (const auto& [metric, title] :
       std::vector<std::pair<std::string, std::string>>{
           {"res", "RES"}, {"subset_match", "Subset Match"}, {"exact_match", "Exact Match"}}) {
    Table t{title, {"Method"}, {}};
    for (bool fk : fks) t.headers.push_back(fk ? "w/ fk" : "w/o fk");
    if (agg.value("scored", 0) > 0) {
      for (const auto& m : methods) {
        std::vector<std::string> row = {m};
        for (bool fk : fks) {
          std::string cell = "-";
          for (const auto& c : agg["cells"]) {
            if (c["title"] == m && c["with_fk"] == fk) cell = Fixed(c[metric], 4);
          }
          row.push_back(cell);
        }
        t.rows.push_back(std::move(row));
      }
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ScoreAndReport(const RunRecord& record, ReportFormat format) {
  const json agg = record.aggregate.is_null()
                       ? AggregateEntries(record.task, record.config, record.entries)
                       : record.aggregate;
  if (format == ReportFormat::kJson) {
    return json{{"run_id", record.run_id},
                {"task", TaskName(record.task)},
                {"metrics", agg}}
               .dump(2) +
           "\n";
  }
  std::vector<Table> tables;
  switch (record.task) {
    case Task::kText2Sql: tables = Text2SqlTables(agg); break;
    case Task::kSelfDebug:
    case Task::kGeneralDebug: tables = DebugTables(agg); break;
    case Task::kOptimization: tables = OptimizationTables(agg); break;
    case Task::kSql2Text: tables = Sql2TextTables(agg); break;
    case Task::kSchemaLinking: tables = LinkingTables(agg); break;
  }
  std::ostringstream out;
  if (format == ReportFormat::kMarkdown) {
    out << "# " << TaskName(record.task) << ": " << record.run_id << "\n";
    for (const auto& t : tables) {
      out << "\n## " << t.title << "\n\n| " << Join(t.headers, " | ") << " |\n|";
      for (size_t i = 0; i < t.headers.size(); ++i) out << (i ? "---:|" : "---|");
      out << "\n";
      for (const auto& row : t.rows) out << "| " << Join(row, " | ") << " |\n";
    }
    return out.str();
  }
  for (size_t k = 0; k < tables.size(); ++k) {
    const auto& t = tables[k];
    if (k) out << "\n";
    std::vector<std::string> header = {"table"};
    for (const auto& h : t.headers) header.push_back(CsvField(h));
    out << Join(header, ",") << "\n";
    for (const auto& row : t.rows) {
      std::vector<std::string> fields = {CsvField(t.title)};
      for (const auto& f : row) fields.push_back(CsvField(f));
      out << Join(fields, ",") << "\n";
    }
  }
  return out.str();
}

}  // namespace sqlbench
