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

#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>

#include "sqlbench/error.h"
#include "sqlbench/pipeline.h"
#include "sqlbench/strings.h"

namespace sqlbench {

using nlohmann::json;

std::string TaskName(Task task) {
  switch (task) {
    case Task::kText2Sql: return "text2sql";
    case Task::kSelfDebug: return "self_debug";
    case Task::kGeneralDebug: return "general_debug";
    case Task::kOptimization: return "optimization";
    case Task::kSql2Text: return "sql_to_text";
    case Task::kSchemaLinking: return "schema_linking";
  }
  return "text2sql";
}

Task ParseTask(std::string_view name) {
  for (auto task : {Task::kText2Sql, Task::kSelfDebug, Task::kGeneralDebug,
                    Task::kOptimization, Task::kSql2Text, Task::kSchemaLinking}) {
    if (name == TaskName(task)) return task;
  }
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string OptimizationModeName(OptimizationMode mode) {
  return mode == OptimizationMode::kTwoStage ? "two_stage" : "direct";
}

OptimizationMode ParseOptimizationMode(std::string_view name) {
  if (name == "two_stage") return OptimizationMode::kTwoStage;
  if (name == "direct") return OptimizationMode::kDirect;
  throw ConfigError("unknown optimization mode '" + std::string(name) + "'");
}

std::string LinkingMethodName(LinkingMethod method) {
  switch (method) {
    case LinkingMethod::kZeroShot: return "zero_shot";
    case LinkingMethod::kFewShot: return "few_shot";
    case LinkingMethod::kPreSql: return "presql";
    case LinkingMethod::kFewShotPlusPreSql: return "few_shot_plus_presql";
  }
  return "zero_shot";
}

std::string LinkingMethodTitle(LinkingMethod method) {
  switch (method) {
    case LinkingMethod::kZeroShot: return "Zero Shot";
    case LinkingMethod::kFewShot: return "Few Shot";
    case LinkingMethod::kPreSql: return "PreSQL";
    case LinkingMethod::kFewShotPlusPreSql: return "Few Shot + PreSQL";
  }
  return "Zero Shot";
}

LinkingMethod ParseLinkingMethod(std::string_view name) {
  for (auto method : kAllLinkingMethods) {
    if (name == LinkingMethodName(method)) return method;
  }
  throw ConfigError("unknown linking method '" + std::string(name) + "'");
}

void RunConfig::Validate() const {
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (dataset.path.empty()) throw ConfigError("dataset.path is required");
  if (dataset.db_root.empty()) throw ConfigError("dataset.db_root is required");
  model.Validate();
  TemplateSpec::FromName(template_name);
  timing.Validate();
  if (execution_timeout <= std::chrono::nanoseconds::zero()) {
    throw ConfigError("execution_timeout_s must be > 0");
  }
  const bool debug = task == Task::kSelfDebug || task == Task::kGeneralDebug;
  if (debug) {
    if (rounds < 1) throw ConfigError("rounds must be >= 1 for debug tasks");
    if (strategies.empty()) throw ConfigError("at least one debug strategy is required");
    if (prior_record.empty()) {
      throw ConfigError("prior_record is required for debug tasks");
    }
  }
  if (task == Task::kGeneralDebug && !debugger_model) {
    throw ConfigError("general_debug requires debugger_model");
  }
  if (task == Task::kSchemaLinking) {
    if (linking_methods.empty()) throw ConfigError("linking.methods is empty");
    if (fk_settings.empty()) throw ConfigError("linking.fk_settings is empty");
  }
}

namespace {

const std::set<std::string> kTopLevelKeys = {
    "task", "run_id", "dataset", "model", "debugger_model", "classifier_model",
    "evaluator_model", "template", "prior_record", "strategies", "strategy",
    "rounds", "optimization", "linking", "parallelism", "timing",
    "execution_timeout_s", "cache_dir", "output"};

std::filesystem::path ResolvePath(const std::filesystem::path& base,
                                  const std::string& value) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

std::chrono::nanoseconds Seconds(double s) {
  return std::chrono::nanoseconds(static_cast<int64_t>(s * 1e9));
}

double ToSeconds(std::chrono::nanoseconds n) {
  return std::chrono::duration<double>(n).count();
}

}  // namespace

RunConfig RunConfigFromJson(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kTopLevelKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    c.task = ParseTask(j.at("task").get<std::string>());
    c.run_id = j.value("run_id", TaskName(c.task));
    const json& d = j.at("dataset");
    c.dataset.path = ResolvePath(base_dir, d.at("path").get<std::string>());
    c.dataset.format = ParseDatasetFormat(d.value("format", "bird-json"));
    c.dataset.db_root = ResolvePath(base_dir, d.at("db_root").get<std::string>());
    c.dataset.compose.include_evidence = d.value("include_evidence", true);
    c.dataset.compose.separator_space = d.value("evidence_separator_space", false);
    c.dataset.limit = d.value("limit", 0);
    c.model = EndpointFromJson(j.at("model"));
    if (j.contains("debugger_model")) c.debugger_model = EndpointFromJson(j["debugger_model"]);
    if (j.contains("classifier_model")) {
      c.classifier_model = EndpointFromJson(j["classifier_model"]);
    }
    if (j.contains("evaluator_model")) {
      c.evaluator_model = EndpointFromJson(j["evaluator_model"]);
    }
    c.template_name = j.value("template", c.template_name);
    c.prior_record = ResolvePath(base_dir, j.value("prior_record", ""));
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j["strategies"]) {
        c.strategies.push_back(ParseDebugStrategy(s.get<std::string>()));
      }
    } else if (j.contains("strategy")) {
      c.strategies = {ParseDebugStrategy(j["strategy"].get<std::string>())};
    }
    c.rounds = j.value("rounds", c.rounds);
    if (j.contains("optimization")) {
      const json& o = j["optimization"];
      c.optimization_mode = ParseOptimizationMode(o.value("mode", "two_stage"));
      c.optimization_variant =
          ParseOptimizationVariant(o.value("variant", "demo_comments"));
    }
    if (j.contains("linking")) {
      const json& l = j["linking"];
      if (l.contains("methods")) {
        c.linking_methods.clear();
        for (const auto& m : l["methods"]) {
          c.linking_methods.push_back(ParseLinkingMethod(m.get<std::string>()));
        }
      }
      if (l.contains("fk_settings")) {
        c.fk_settings.clear();
        for (const auto& f : l["fk_settings"]) c.fk_settings.push_back(f.get<bool>());
      }
    }
    c.parallelism = j.value("parallelism", c.parallelism);
    if (j.contains("timing")) {
      const json& t = j["timing"];
      c.timing.warmups = t.value("warmups", c.timing.warmups);
      c.timing.repetitions = t.value("repetitions", c.timing.repetitions);
      c.timing.timeout = Seconds(t.value("timeout_s", ToSeconds(c.timing.timeout)));
    }
    c.execution_timeout =
        Seconds(j.value("execution_timeout_s", ToSeconds(c.execution_timeout)));
    c.cache_dir = ResolvePath(base_dir, j.value("cache_dir", ""));
    c.output = ResolvePath(base_dir, j.value("output", ""));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

json RunConfigToJson(const RunConfig& c) {
  json j = {
      {"task", TaskName(c.task)},
      {"run_id", c.run_id},
      {"dataset",
       {{"path", c.dataset.path.string()},
        {"format", c.dataset.format == DatasetFormat::kBirdJson ? "bird-json"
                                                                : "spider-json"},
        {"db_root", c.dataset.db_root.string()},
        {"include_evidence", c.dataset.compose.include_evidence},
        {"evidence_separator_space", c.dataset.compose.separator_space},
        {"limit", c.dataset.limit}}},
      {"model", EndpointToJson(c.model)},
      {"template", c.template_name},
      {"rounds", c.rounds},
      {"optimization",
       {{"mode", OptimizationModeName(c.optimization_mode)},
        {"variant", OptimizationVariantName(c.optimization_variant)}}},
      {"parallelism", c.parallelism},
      {"timing",
       {{"warmups", c.timing.warmups},
        {"repetitions", c.timing.repetitions},
        {"timeout_s", ToSeconds(c.timing.timeout)}}},
      {"execution_timeout_s", ToSeconds(c.execution_timeout)},
      {"cache_dir", c.cache_dir.string()},
      {"output", c.output.string()},
  };
  if (c.debugger_model) j["debugger_model"] = EndpointToJson(*c.debugger_model);
  if (c.classifier_model) j["classifier_model"] = EndpointToJson(*c.classifier_model);
  if (c.evaluator_model) j["evaluator_model"] = EndpointToJson(*c.evaluator_model);
  if (!c.prior_record.empty()) j["prior_record"] = c.prior_record.string();
  json strategies = json::array();
  for (auto s : c.strategies) strategies.push_back(DebugStrategyName(s));
  j["strategies"] = strategies;
  json methods = json::array();
  for (auto m : c.linking_methods) methods.push_back(LinkingMethodName(m));
  json fks = json::array();
  for (bool f : c.fk_settings) fks.push_back(f);
  j["linking"] = {{"methods", methods}, {"fk_settings", fks}};
  return j;
}

json InterpolateEnv(const json& j) {
  if (j.is_string()) {
    static const std::regex kVar(R"(\$\{([A-Za-z_][A-Za-z0-9_]*)\})");
    const std::string s = j.get<std::string>();
    std::string out;
    auto begin = std::sregex_iterator(s.begin(), s.end(), kVar);
    size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const std::string name = (*it)[1].str();
      const char* value = std::getenv(name.c_str());
      if (value == nullptr) {
        throw ConfigError("environment variable " + name + " is not set");
      }
      out += s.substr(last, it->position(0) - last);
      out += value;
      last = it->position(0) + it->length(0);
    }
    out += s.substr(last);
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) out[key] = InterpolateEnv(value);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& value : j) out.push_back(InterpolateEnv(value));
    return out;
  }
  return j;
}

json ApplyOverrides(json j, const std::vector<std::string>& overrides) {
  for (const auto& entry : overrides) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override must look like key.path=value, got '" + entry + "'");
    }
    const std::string key = entry.substr(0, eq);
    const std::string raw = entry.substr(eq + 1);
    // Values that parse as JSON keep their type; anything else is a string.
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &j;
    const auto parts = Split(key, '.');
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!node->is_object()) {
        throw ConfigError("override path '" + key + "' crosses a non-object");
      }
      node = &(*node)[parts[i]];
      if (node->is_null()) *node = json::object();
    }
    if (!node->is_object()) {
      throw ConfigError("override path '" + key + "' crosses a non-object");
    }
    (*node)[parts.back()] = value;
  }
  return j;
}

RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
  j = ApplyOverrides(InterpolateEnv(j), overrides);
  const auto base = std::filesystem::absolute(path).parent_path();
  return RunConfigFromJson(j, base);
}

}  // namespace sqlbench
