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

#include "sqlbench/pipeline.h"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "sqlbench/classifier.h"
#include "sqlbench/error.h"
#include "sqlbench/metrics.h"
#include "sqlbench/sqlanalysis.h"
#include "sqlbench/strings.h"

namespace sqlbench {

using nlohmann::json;

namespace {

constexpr std::string_view kNoSqlMessage =
    "no SQL could be extracted from the completion";

// Streams entries to <output>.partial in index order and renames the file
// into place once the aggregate is written.
class RecordSink {
 public:
  RecordSink(std::filesystem::path output, const json& header)
      : output_(std::move(output)) {
    if (output_.empty()) return;
    if (output_.has_parent_path()) {
      std::filesystem::create_directories(output_.parent_path());
    }
    partial_ = output_;
    partial_ += ".partial";
    out_.open(partial_, std::ios::trunc);
    if (!out_) {
      throw ConfigError("cannot write run record " + partial_.string());
    }
    out_ << header.dump() << "\n";
    out_.flush();
  }

  void Submit(size_t index, json entry) {
    std::lock_guard lock(mu_);
    ready_[index] = std::move(entry);
    while (!ready_.empty() && ready_.begin()->first == next_) {
      if (out_.is_open()) {
        out_ << ready_.begin()->second.dump() << "\n";
        out_.flush();
      }
      entries_.push_back(std::move(ready_.begin()->second));
      ready_.erase(ready_.begin());
      ++next_;
    }
  }

  std::vector<json> TakeEntries() {
    std::lock_guard lock(mu_);
    return std::move(entries_);
  }

  void Finish(const json& aggregate) {
    if (!out_.is_open()) return;
    out_ << aggregate.dump() << "\n";
    out_.close();
    std::filesystem::rename(partial_, output_);
  }

 private:
  std::filesystem::path output_;
  std::filesystem::path partial_;
  std::ofstream out_;
  std::mutex mu_;
  std::map<size_t, json> ready_;
  std::vector<json> entries_;
  size_t next_ = 0;
};

// Runs fn(i) for i in [0, n) on up to `parallelism` threads. The first
// exception stops further work and is rethrown after all threads join.
template <typename Fn>
void ParallelFor(size_t n, int parallelism, Fn fn) {
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (!stop.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };
  const size_t threads = std::min<size_t>(std::max(parallelism, 1), std::max<size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

json BaseEntry(size_t index, const BenchmarkInstance& inst) {
  json e = {
      {"type", "entry"},
      {"index", index},
      {"instance_id", inst.id},
      {"db_id", inst.db_id},
      {"gt_table_count", inst.gt_table_count},
      {"stratum", StratumLabel(StratumFor(inst.gt_table_count))},
      {"excluded", inst.excluded},
  };
  if (!inst.warning.empty()) e["warning"] = inst.warning;
  return e;
}

std::string ErrorKindOf(const ExecutionOutcome& outcome) {
  return outcome.ok() ? "result" : "system";
}

struct Attempt {
  std::string sql;
  ExecutionOutcome outcome;
  bool correct = false;
  std::string extraction_error;
};

ExecutionOutcome NoSqlOutcome() {
  ExecutionOutcome o;
  o.status = ExecutionStatus::kEngineError;
  o.error_message = std::string(kNoSqlMessage);
  return o;
}

ExecutionOutcome RunSql(const std::filesystem::path& db, const std::string& sql,
                        const RunConfig& config) {
  if (Trim(sql).empty()) return NoSqlOutcome();
  return Execute(db, sql, config.execution_timeout);
}

Attempt ExtractAndRun(const std::string& completion, AnswerMode mode,
                      const std::filesystem::path& db,
                      const ExecutionOutcome& gold, const std::string& gold_sql,
                      const RunConfig& config) {
  Attempt a;
  try {
    a.sql = ExtractSql(completion, mode);
  } catch (const ExtractionError& e) {
    a.extraction_error = e.what();
  }
  a.outcome = RunSql(db, a.sql, config);
  a.correct = ResultsMatch(a.outcome, gold, gold_sql);
  return a;
}

void PutAttempt(json& e, const Attempt& a) {
  e["pred_sql"] = a.sql;
  e["status"] = ExecutionStatusName(a.outcome.status);
  if (!a.outcome.ok()) e["error_message"] = a.outcome.error_message;
  e["row_count"] = a.outcome.rows.size();
  e["correct"] = a.correct;
  e["error_kind"] = a.correct ? json(nullptr) : json(ErrorKindOf(a.outcome));
  if (!a.extraction_error.empty()) e["extraction_error"] = a.extraction_error;
}

void PutCompletion(json& e, const RenderedPrompt& prompt,
                   const CompletionRecord& rec, const std::string& prefix = "") {
  e[prefix + "template"] = prompt.template_name;
  e[prefix + "prompt_digest"] = Sha256Hex(prompt.text);
  e[prefix + "completion_key"] = rec.cache_key;
}

bool IsEndpointFailure(const Error& e) {
  return e.error_class() == ErrorClass::kEndpoint;
}

// Runs one instance body; data-level failures are recorded on the entry
// and the instance is left out of scoring. Endpoint failures propagate.
template <typename Body>
json GuardInstance(size_t index, const BenchmarkInstance& inst, Body body) {
  json e = BaseEntry(index, inst);
  if (inst.excluded) return e;
  try {
    body(e);
  } catch (const Error& err) {
    if (IsEndpointFailure(err)) throw;
    e["excluded"] = true;
    e["error"] = err.what();
  }
  return e;
}

ExecutionOutcome GoldOutcome(const std::filesystem::path& db,
                             const BenchmarkInstance& inst,
                             const RunConfig& config) {
  ExecutionOutcome gold = Execute(db, inst.gold_sql, config.execution_timeout);
  if (!gold.ok()) {
    throw DataError("gold SQL failed (" + ExecutionStatusName(gold.status) +
                    "): " + gold.error_message);
  }
  return gold;
}

std::shared_ptr<LlmClient> MakeClient(const ModelEndpointConfig& cfg,
                                      const RunConfig& config, bool offline) {
  std::shared_ptr<DiskCache> cache;
  if (!config.cache_dir.empty()) cache = std::make_shared<DiskCache>(config.cache_dir);
  std::shared_ptr<ChatBackend> backend;
  if (!offline) backend = std::make_shared<HttpChatBackend>(cfg);
  return std::make_shared<LlmClient>(cfg, backend, cache);
}

LlmClient& Need(std::shared_ptr<LlmClient>& client,
                const std::optional<ModelEndpointConfig>& cfg,
                const RunConfig& config, bool offline, const char* role) {
  if (!client) {
    if (!cfg) throw ConfigError(std::string(role) + " is not configured");
    client = MakeClient(*cfg, config, offline);
  }
  return *client;
}

LlmClient& ModelClient(RunContext& ctx, const RunConfig& config) {
  return Need(ctx.model, config.model, config, ctx.offline, "model");
}

json Header(const RunConfig& config, Task task) {
  return {{"type", "header"},
          {"run_id", config.run_id},
          {"task", TaskName(task)},
          {"config", RunConfigToJson(config)}};
}

RunRecord Finalize(const RunConfig& config, Task task, RecordSink& sink) {
  RunRecord record;
  record.run_id = config.run_id;
  record.task = task;
  record.config = RunConfigToJson(config);
  record.entries = sink.TakeEntries();
  record.aggregate = AggregateEntries(task, record.config, record.entries);
  sink.Finish(json{{"type", "aggregate"}, {"metrics", record.aggregate}});
  return record;
}

template <typename PerInstance>
RunRecord RunEach(const Benchmark& data, const RunConfig& config, Task task,
                  PerInstance per_instance) {
  RecordSink sink(config.output, Header(config, task));
  const auto& instances = data.instances();
  ParallelFor(instances.size(), config.parallelism, [&](size_t i) {
    sink.Submit(i, GuardInstance(i, instances[i], [&](json& e) {
                  per_instance(i, instances[i], e);
                }));
  });
  return Finalize(config, task, sink);
}

std::optional<double> RecordedEfficiency(const RunContext& ctx, size_t index,
                                         const char* field,
                                         const std::string& sql) {
  if (ctx.timing_source == nullptr) return std::nullopt;
  for (const auto& e : ctx.timing_source->entries) {
    if (e.value("index", size_t{0}) != index) continue;
    const json* node = &e;
    if (std::string_view(field) != "gold") {
      if (!e.contains(field)) return std::nullopt;
      node = &e[field];
    }
    if (node->value("timed_sql", "") != sql) return std::nullopt;
    if (!node->contains("efficiency") || !(*node)["efficiency"].is_number()) {
      return std::nullopt;
    }
    return (*node)["efficiency"].get<double>();
  }
  return std::nullopt;
}

}  // namespace

Benchmark LoadBenchmark(const DatasetConfig& dataset) {
  auto instances = LoadInstances(dataset.path, dataset.format);
  if (dataset.limit > 0 && instances.size() > static_cast<size_t>(dataset.limit)) {
    instances.resize(dataset.limit);
  }
  return Benchmark(std::move(instances), dataset.db_root);
}

RunRecord RunText2Sql(const Benchmark& data, const RunConfig& config,
                      RunContext& ctx) {
  const TemplateSpec spec = TemplateSpec::FromName(config.template_name);
  LlmClient& model = ModelClient(ctx, config);
  return RunEach(data, config, Task::kText2Sql,
                 [&](size_t, const BenchmarkInstance& inst, json& e) {
    const auto& catalog = data.Catalog(inst.db_id);
    const auto db = data.DatabasePath(inst.db_id);
    const ExecutionOutcome gold = GoldOutcome(db, inst, config);
    const RenderedPrompt prompt = RenderText2Sql(
        catalog, ComposeQuestion(inst, config.dataset.compose), spec);
    const CompletionRecord rec = model.Complete(prompt);
    PutCompletion(e, prompt, rec);
    PutAttempt(e, ExtractAndRun(rec.completion, prompt.expected_answer_mode, db,
                                gold, inst.gold_sql, config));
  });
}

namespace {

ErrorDiagnosis DiagnoseFor(DebugStrategy strategy, const Attempt& current,
                           const BenchmarkInstance& inst,
                           const DatabaseCatalog& catalog,
                           const std::string& question, LlmClient* classifier) {
  if (!current.outcome.ok()) {
    ErrorDiagnosis d;
    d.kind = ErrorKind::kSystemError;
    d.system_message = current.outcome.error_message;
    return d;
  }
  if (strategy == DebugStrategy::kWrongSqlSystem) {
    ErrorDiagnosis d;
    d.kind = ErrorKind::kResultError;
    return d;
  }
  try {
    return Classify(current.sql, inst.gold_sql, current.outcome, &catalog,
                    question, classifier);
  } catch (const ArgumentError&) {
    // Same text as gold yet different rows: no structural signal to give.
    ErrorDiagnosis d;
    d.kind = ErrorKind::kResultError;
    return d;
  }
}

json DiagnosisJson(const ErrorDiagnosis& d) {
  json j = {{"kind", d.kind == ErrorKind::kSystemError ? "system" : "result"}};
  if (!d.system_message.empty()) j["system_message"] = d.system_message;
  if (d.subcategory) j["subcategory"] = SubcategoryName(*d.subcategory);
  if (d.unverified) j["unverified"] = true;
  if (d.parse_degraded) j["parse_degraded"] = true;
  return j;
}

RunRecord RunDebug(const Benchmark& data, const RunRecord& prior,
                   const RunConfig& config, RunContext& ctx, Task task,
                   LlmClient& debugger) {
  if (prior.task != Task::kText2Sql) {
    throw ConfigError("debug runs start from a text2sql record, got " +
                      TaskName(prior.task));
  }
  std::map<std::string, const json*> prior_by_id;
  for (const auto& e : prior.entries) {
    prior_by_id[e.value("instance_id", "")] = &e;
  }
  // Regenerate must reproduce the original prompt exactly.
  const TemplateSpec base = TemplateSpec::FromName(
      prior.config.value("template", config.template_name));
  ComposeOptions compose = config.dataset.compose;
  if (prior.config.contains("dataset")) {
    compose.include_evidence =
        prior.config["dataset"].value("include_evidence", compose.include_evidence);
    compose.separator_space = prior.config["dataset"].value(
        "evidence_separator_space", compose.separator_space);
  }
  LlmClient* classifier = nullptr;
  if (ctx.classifier || config.classifier_model) {
    classifier = &Need(ctx.classifier, config.classifier_model, config,
                       ctx.offline, "classifier_model");
  }

  return RunEach(data, config, task,
                 [&](size_t, const BenchmarkInstance& inst, json& e) {
    auto it = prior_by_id.find(inst.id);
    if (it == prior_by_id.end()) {
      throw DataError("instance " + inst.id + " is missing from the prior record");
    }
    const json& before = *it->second;
    if (before.value("excluded", false)) {
      e["excluded"] = true;
      return;
    }
    e["prior_correct"] = before.value("correct", false);
    e["prior_error_kind"] = before.value("error_kind", json(nullptr));
    if (e["prior_correct"].get<bool>()) return;

    const auto& catalog = data.Catalog(inst.db_id);
    const auto db = data.DatabasePath(inst.db_id);
    const ExecutionOutcome gold = GoldOutcome(db, inst, config);
    const std::string question = ComposeQuestion(inst, compose);
    json strategies = json::object();
    for (DebugStrategy strategy : config.strategies) {
      Attempt current;
      current.sql = before.value("pred_sql", "");
      current.outcome = RunSql(db, current.sql, config);
      json history = json::array();
      for (int round = 1; round <= config.rounds; ++round) {
        json step = {{"round", round}};
        RenderedPrompt prompt;
        if (strategy == DebugStrategy::kRegenerate || Trim(current.sql).empty()) {
          prompt = RenderText2Sql(catalog, question, base);
        } else {
          std::optional<ErrorDiagnosis> diagnosis;
          if (StrategyNeedsDiagnosis(strategy)) {
            diagnosis = DiagnoseFor(strategy, current, inst, catalog, question,
                                    classifier);
            step["diagnosis"] = DiagnosisJson(*diagnosis);
          }
          prompt = RenderDebug(catalog, question, current.sql, strategy,
                               diagnosis ? &*diagnosis : nullptr, base);
        }
        const CompletionRecord rec = debugger.Complete(prompt);
        PutCompletion(step, prompt, rec);
        Attempt next = ExtractAndRun(rec.completion, prompt.expected_answer_mode,
                                     db, gold, inst.gold_sql, config);
        PutAttempt(step, next);
        history.push_back(std::move(step));
        if (next.correct) break;
        current = std::move(next);
      }
      strategies[DebugStrategyName(strategy)] = std::move(history);
    }
    e["strategies"] = std::move(strategies);
  });
}

}  // namespace

RunRecord RunSelfDebug(const Benchmark& data, const RunRecord& prior,
                       const RunConfig& config, RunContext& ctx) {
  return RunDebug(data, prior, config, ctx, Task::kSelfDebug,
                  ModelClient(ctx, config));
}

RunRecord RunGeneralDebug(const Benchmark& data, const RunRecord& prior,
                          const RunConfig& config, RunContext& ctx) {
  if (!config.debugger_model) throw ConfigError("general_debug requires debugger_model");
  if (prior.config.contains("model")) {
    const json& source = prior.config["model"];
    if (source.value("model_name", "") == config.debugger_model->model_name &&
        source.value("base_url", "") == config.debugger_model->base_url) {
      throw ConfigError(
          "general_debug needs a debugger model different from the source run's "
          "model; use self_debug instead");
    }
  }
  LlmClient& debugger =
      Need(ctx.debugger, config.debugger_model, config, ctx.offline, "debugger_model");
  return RunDebug(data, prior, config, ctx, Task::kGeneralDebug, debugger);
}

RunRecord RunOptimization(const Benchmark& data, const RunConfig& config,
                          RunContext& ctx) {
  LlmClient& model = ModelClient(ctx, config);
  TemplateSpec stage_one = TemplateSpec::FromName("SimpleDDL-MD-Chat");
  TemplateSpec direct = stage_one;
  direct.efficiency_variant = true;
  return RunEach(data, config, Task::kOptimization,
                 [&](size_t index, const BenchmarkInstance& inst, json& e) {
    const auto& catalog = data.Catalog(inst.db_id);
    const auto db = data.DatabasePath(inst.db_id);
    const ExecutionOutcome gold = GoldOutcome(db, inst, config);
    const std::string question = ComposeQuestion(inst, config.dataset.compose);

    std::optional<double> gold_efficiency;
    auto time_sql = [&](const char* field, const std::string& sql) {
      if (auto recorded = RecordedEfficiency(ctx, index, field, sql)) return *recorded;
      return TimeQuery(db, sql, config.timing, ctx.clock).efficiency;
    };
    // Fills timing fields for a correct attempt; timing failures count as R=1.
    auto score = [&](json& node, const Attempt& a, const char* field) {
      PutAttempt(node, a);
      if (!a.correct) return;
      try {
        if (!gold_efficiency) {
          gold_efficiency = time_sql("gold", inst.gold_sql);
          e["timed_sql"] = inst.gold_sql;
          e["efficiency"] = *gold_efficiency;
        }
        const double eff = time_sql(field, a.sql);
        node["timed_sql"] = a.sql;
        node["efficiency"] = eff;
        node["r"] = EfficiencyRatio(*gold_efficiency, eff);
      } catch (const TimingError& err) {
        node["timing_failed"] = true;
        node["timing_error"] = err.what();
      }
    };

    if (config.optimization_mode == OptimizationMode::kTwoStage) {
      const RenderedPrompt first = RenderText2Sql(catalog, question, stage_one);
      const CompletionRecord rec1 = model.Complete(first);
      const Attempt y = ExtractAndRun(rec1.completion, first.expected_answer_mode,
                                      db, gold, inst.gold_sql, config);
      json baseline = json::object();
      PutCompletion(baseline, first, rec1);
      score(baseline, y, "baseline");
      e["baseline"] = std::move(baseline);
      json optimized = json::object();
      Attempt rewritten;
      if (Trim(y.sql).empty()) {
        rewritten = y;
      } else {
        const RenderedPrompt second = RenderOptimization(
            y.sql, &catalog, question, config.optimization_variant);
        const CompletionRecord rec2 = model.Complete(second);
        PutCompletion(optimized, second, rec2);
        rewritten = ExtractAndRun(rec2.completion, second.expected_answer_mode,
                                  db, gold, inst.gold_sql, config);
      }
      score(optimized, rewritten, "optimized");
      e["optimized"] = std::move(optimized);
    } else {
      const RenderedPrompt prompt = RenderText2Sql(catalog, question, direct);
      const CompletionRecord rec = model.Complete(prompt);
      json optimized = json::object();
      PutCompletion(optimized, prompt, rec);
      score(optimized,
            ExtractAndRun(rec.completion, prompt.expected_answer_mode, db, gold,
                          inst.gold_sql, config),
            "optimized");
      e["optimized"] = std::move(optimized);
    }
  });
}

RunRecord RunSql2Text(const Benchmark& data, const RunConfig& config,
                      RunContext& ctx) {
  LlmClient& generator = ModelClient(ctx, config);
  LlmClient* evaluator = nullptr;
  if (ctx.evaluator || config.evaluator_model) {
    evaluator = &Need(ctx.evaluator, config.evaluator_model, config, ctx.offline,
                      "evaluator_model");
  }
  return RunEach(data, config, Task::kSql2Text,
                 [&](size_t, const BenchmarkInstance& inst, json& e) {
    std::optional<std::string_view> evidence;
    if (config.dataset.compose.include_evidence && !inst.evidence.empty()) {
      evidence = inst.evidence;
    }
    const RenderedPrompt prompt = RenderSql2Text(inst.gold_sql, evidence);
    const CompletionRecord rec = generator.Complete(prompt);
    PutCompletion(e, prompt, rec);
    std::string predicted;
    try {
      predicted = ExtractQuestion(rec.completion);
    } catch (const ExtractionError& err) {
      e["extraction_error"] = err.what();
    }
    e["predicted_question"] = predicted;
    const RougeScores rouge = RougeF1(predicted, inst.question);
    e["rouge"] = {{"rouge1", rouge.rouge1}, {"rouge2", rouge.rouge2},
                  {"rougeL", rouge.rouge_l}};
    if (evaluator == nullptr) return;
    auto judge = [&](std::string_view s1, std::string_view s2, const char* key) {
      const RenderedPrompt p = RenderConsistency(s1, s2);
      const CompletionRecord r = evaluator->Complete(p);
      bool verdict = false;
      try {
        verdict = ExtractBool(r.completion);
      } catch (const ExtractionError&) {
        e[std::string(key) + "_unparsed"] = true;
      }
      e[std::string(key) + "_key"] = r.cache_key;
      return verdict;
    };
    e["consistency"] = {judge(predicted, inst.question, "consistency_ab"),
                        judge(inst.question, predicted, "consistency_ba")};
  });
}

RunRecord RunSchemaLinking(const Benchmark& data, const RunConfig& config,
                           RunContext& ctx) {
  LlmClient& model = ModelClient(ctx, config);
  auto wants = [&](LinkingMethod m) {
    for (auto x : config.linking_methods) {
      if (x == m) return true;
    }
    return false;
  };
  return RunEach(data, config, Task::kSchemaLinking,
                 [&](size_t, const BenchmarkInstance& inst, json& e) {
    const auto& catalog = data.Catalog(inst.db_id);
    const std::string question = ComposeQuestion(inst, config.dataset.compose);
    const auto gt = ExtractEntities(inst.gold_sql, &catalog).tables;
    if (gt.empty()) throw DataError("gold SQL references no tables");
    e["gt_tables"] = gt;
    json results = json::array();
    for (bool fk : config.fk_settings) {
      std::map<LinkingMethod, std::set<std::string>> found;
      std::map<LinkingMethod, json> notes;
      auto prompt_method = [&](LinkingMethod m, LinkingPromptMethod pm) {
        const RenderedPrompt p = RenderLinking(catalog, question, pm, fk);
        const CompletionRecord rec = model.Complete(p);
        PutCompletion(notes[m], p, rec);
        try {
          found[m] = StripToTables(rec.completion, &catalog);
        } catch (const ExtractionError& err) {
          found[m] = {};
          notes[m]["extraction_error"] = err.what();
        }
      };
      const bool need_few = wants(LinkingMethod::kFewShot) ||
                            wants(LinkingMethod::kFewShotPlusPreSql);
      const bool need_presql = wants(LinkingMethod::kPreSql) ||
                               wants(LinkingMethod::kFewShotPlusPreSql);
      if (wants(LinkingMethod::kZeroShot)) {
        prompt_method(LinkingMethod::kZeroShot, LinkingPromptMethod::kZeroShot);
      }
      if (need_few) prompt_method(LinkingMethod::kFewShot, LinkingPromptMethod::kFewShot);
      if (need_presql) {
        TemplateSpec spec = TemplateSpec::FromName("SimpleDDL-MD-Chat");
        spec.include_foreign_keys = fk;
        const RenderedPrompt p = RenderText2Sql(catalog, question, spec);
        const CompletionRecord rec = model.Complete(p);
        json& note = notes[LinkingMethod::kPreSql];
        PutCompletion(note, p, rec);
        try {
          const std::string sql = ExtractSql(rec.completion, p.expected_answer_mode);
          note["pred_sql"] = sql;
          found[LinkingMethod::kPreSql] = ExtractEntities(sql, &catalog).tables;
        } catch (const Error& err) {
          if (IsEndpointFailure(err)) throw;
          found[LinkingMethod::kPreSql] = {};
          note["extraction_error"] = err.what();
        }
      }
      if (wants(LinkingMethod::kFewShotPlusPreSql)) {
        auto merged = found[LinkingMethod::kFewShot];
        merged.insert(found[LinkingMethod::kPreSql].begin(),
                      found[LinkingMethod::kPreSql].end());
        found[LinkingMethod::kFewShotPlusPreSql] = merged;
      }
      for (LinkingMethod m : config.linking_methods) {
        json r = notes.count(m) ? notes[m] : json::object();
        r["method"] = LinkingMethodName(m);
        r["with_fk"] = fk;
        r["retrieved"] = found[m];
        results.push_back(std::move(r));
      }
    }
    e["linking"] = std::move(results);
  });
}

RunRecord ExecuteRun(const RunConfig& config, RunContext& context) {
  config.Validate();
  const Benchmark data = LoadBenchmark(config.dataset);
  switch (config.task) {
    case Task::kText2Sql: return RunText2Sql(data, config, context);
    case Task::kSelfDebug:
      return RunSelfDebug(data, LoadRunRecord(config.prior_record), config, context);
    case Task::kGeneralDebug:
      return RunGeneralDebug(data, LoadRunRecord(config.prior_record), config,
                             context);
    case Task::kOptimization: return RunOptimization(data, config, context);
    case Task::kSql2Text: return RunSql2Text(data, config, context);
    case Task::kSchemaLinking: return RunSchemaLinking(data, config, context);
  }
  throw Error(ErrorClass::kInternal, "unhandled task");
}

}  // namespace sqlbench
