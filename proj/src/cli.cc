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

#include "sqlbench/cli.h"

#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqlbench/classifier.h"
#include "sqlbench/error.h"
#include "sqlbench/pipeline.h"
#include "sqlbench/prompt.h"
#include "sqlbench/sqlanalysis.h"

namespace sqlbench {

using nlohmann::json;

namespace {

std::string ClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kConfig: return "config";
    case ErrorClass::kData: return "data";
    case ErrorClass::kEndpoint: return "endpoint";
    case ErrorClass::kInternal: return "internal";
  }
  return "internal";
}

int Fail(std::ostream& err, ErrorClass c, const std::string& message) {
  err << json{{"error", ClassName(c)}, {"message", message}}.dump() << std::endl;
  return static_cast<int>(c);
}

struct DbOptions {
  std::string db;
  std::string db_root = ".";
  std::string config;
  std::vector<std::string> overrides;
};

// --db names a database under --db-root (or the config's db_root), or is a
// path to a database file.
DatabaseCatalog LoadCatalogFor(const DbOptions& o, std::filesystem::path* db_path) {
  std::filesystem::path path(o.db);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    std::filesystem::path root = o.db_root;
    if (!o.config.empty()) root = LoadRunConfig(o.config, o.overrides).dataset.db_root;
    path = ResolveDatabasePath(root, o.db);
  }
  if (db_path) *db_path = path;
  return IntrospectCatalog(path);
}

void AddDbOptions(CLI::App* cmd, DbOptions& o) {
  cmd->add_option("--db", o.db, "Database id under the db root, or a database file")
      ->required();
  cmd->add_option("--db-root", o.db_root, "Directory holding <db_id>/<db_id>.sqlite");
  cmd->add_option("--config", o.config, "Run config supplying dataset.db_root");
  cmd->add_option("--set", o.overrides, "Config override key.path=value");
}

int ValidateData(const std::string& config_path,
                 const std::vector<std::string>& overrides, std::ostream& out) {
  const RunConfig config = LoadRunConfig(config_path, overrides);
  const Benchmark data = LoadBenchmark(config.dataset);
  std::map<std::string, size_t> strata;
  std::set<std::string> databases;
  size_t excluded = 0;
  json warnings = json::array();
  for (const auto& inst : data.instances()) {
    if (!databases.count(inst.db_id)) {
      data.Catalog(inst.db_id).Validate();
      databases.insert(inst.db_id);
    }
    if (inst.excluded) {
      ++excluded;
      warnings.push_back({{"instance_id", inst.id}, {"warning", inst.warning}});
      continue;
    }
    ++strata[StratumLabel(StratumFor(inst.gt_table_count))];
  }
  out << json{{"instances", data.instances().size()},
              {"excluded", excluded},
              {"databases", databases.size()},
              {"strata", strata},
              {"warnings", warnings}}
             .dump()
      << std::endl;
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Text-to-SQL benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Run config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", overrides, "Config override key.path=value");
  };

  auto* validate = app.add_subcommand("validate-data", "Check dataset and catalogs");
  add_config(validate);

  auto* run = app.add_subcommand("run", "Execute a run config");
  add_config(run);
  bool offline = false;
  run->add_flag("--offline", offline, "Serve completions from the cache only");

  auto* rescore = app.add_subcommand("rescore", "Recompute a record from the cache");
  std::string record_path;
  std::string rescore_output;
  rescore->add_option("--record", record_path, "Run record (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  rescore->add_option("--output", rescore_output, "Write the rescored record here");

  auto* report = app.add_subcommand("report", "Render tables from run records");
  std::vector<std::string> report_records;
  std::string format = "markdown";
  report->add_option("records", report_records, "Run records (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--format", format, "markdown, csv or json");

  auto* render = app.add_subcommand("render-prompt", "Print one rendered prompt");
  DbOptions render_db;
  std::string kind = "text2sql";
  std::string template_name = "SimpleDDL-MD-Chat";
  std::string question, sql, gold, strategy = "wrong_sql_all_comment",
                                   variant = "demo_comments", evidence;
  bool with_fk = false;
  render->add_option("--kind", kind,
                     "text2sql, debug, optimization, sql2text, linking-zero-shot, "
                     "linking-few-shot, classification or consistency");
  render->add_option("--template", template_name, "Text-to-SQL template name");
  render->add_option("--question", question, "Question (or first sentence)");
  render->add_option("--sql", sql, "SQL for debug, optimization, sql2text, classification");
  render->add_option("--gold", gold, "Gold SQL (classification) or second sentence");
  render->add_option("--strategy", strategy, "Debug strategy");
  render->add_option("--variant", variant, "Optimization variant");
  render->add_option("--evidence", evidence, "Evidence for sql2text");
  render->add_flag("--with-fk", with_fk, "Include foreign keys (linking)");
  render->add_option("--db", render_db.db, "Database id or file");
  render->add_option("--db-root", render_db.db_root, "Directory of databases");
  render->add_option("--config", render_db.config, "Run config supplying db_root");
  render->add_option("--set", render_db.overrides, "Config override");

  auto* classify = app.add_subcommand("classify", "Diagnose one wrong prediction");
  DbOptions classify_db;
  std::string pred_sql, gold_sql, classify_question;
  classify->add_option("--pred", pred_sql, "Predicted SQL")->required();
  classify->add_option("--gold", gold_sql, "Gold SQL")->required();
  classify->add_option("--question", classify_question, "Question text");
  AddDbOptions(classify, classify_db);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      return Fail(err, ErrorClass::kConfig, e.what());
    }

    if (*validate) return ValidateData(config_path, overrides, out);

    if (*run) {
      const RunConfig config = LoadRunConfig(config_path, overrides);
      RunContext context;
      context.offline = offline;
      const RunRecord record = ExecuteRun(config, context);
      out << json{{"run_id", record.run_id},
                  {"task", TaskName(record.task)},
                  {"output", config.output.string()},
                  {"metrics", record.aggregate}}
                 .dump()
          << std::endl;
      return 0;
    }

    if (*rescore) {
      const RunRecord original = LoadRunRecord(record_path);
      RunConfig config = RunConfigFromJson(original.config, "/");
      config.output = rescore_output;
      RunContext context;
      context.offline = true;
      context.timing_source = &original;
      const RunRecord again = ExecuteRun(config, context);
      out << json{{"run_id", again.run_id},
                  {"identical", again.aggregate == original.aggregate},
                  {"metrics", again.aggregate}}
                 .dump()
          << std::endl;
      return 0;
    }

    if (*report) {
      const ReportFormat fmt = ParseReportFormat(format);
      for (size_t i = 0; i < report_records.size(); ++i) {
        if (i && fmt == ReportFormat::kMarkdown) out << "\n";
        out << ScoreAndReport(LoadRunRecord(report_records[i]), fmt);
      }
      return 0;
    }

    if (*render) {
      RenderedPrompt prompt;
      auto catalog = [&] {
        if (render_db.db.empty()) throw ConfigError("--db is required for --kind " + kind);
        return LoadCatalogFor(render_db, nullptr);
      };
      if (kind == "text2sql") {
        prompt = RenderText2Sql(catalog(), question, TemplateSpec::FromName(template_name));
      } else if (kind == "debug") {
        const DebugStrategy s = ParseDebugStrategy(strategy);
        std::optional<ErrorDiagnosis> diagnosis;
        std::filesystem::path db_path;
        const DatabaseCatalog cat = catalog();
        if (StrategyNeedsDiagnosis(s)) {
          if (gold.empty()) throw ConfigError("--gold is required for " + strategy);
          LoadCatalogFor(render_db, &db_path);
          const ExecutionOutcome outcome = Execute(db_path, sql);
          diagnosis = Classify(sql, gold, outcome, &cat, question, nullptr);
        }
        prompt = RenderDebug(cat, question, sql, s, diagnosis ? &*diagnosis : nullptr,
                             TemplateSpec::FromName(template_name));
      } else if (kind == "optimization") {
        const OptimizationVariant v = ParseOptimizationVariant(variant);
        std::optional<DatabaseCatalog> cat;
        if (!render_db.db.empty()) cat = catalog();
        std::optional<std::string_view> q;
        if (!question.empty()) q = question;
        prompt = RenderOptimization(sql, cat ? &*cat : nullptr, q, v);
      } else if (kind == "sql2text") {
        std::optional<std::string_view> ev;
        if (!evidence.empty()) ev = evidence;
        prompt = RenderSql2Text(sql, ev);
      } else if (kind == "linking-zero-shot" || kind == "linking-few-shot") {
        prompt = RenderLinking(catalog(), question,
                               kind == "linking-zero-shot" ? LinkingPromptMethod::kZeroShot
                                                           : LinkingPromptMethod::kFewShot,
                               with_fk);
      } else if (kind == "classification") {
        prompt = RenderErrorClassification(question, gold, sql);
      } else if (kind == "consistency") {
        prompt = RenderConsistency(question, gold);
      } else {
        throw ConfigError("unknown prompt kind '" + kind + "'");
      }
      out << prompt.text << std::endl;
      return 0;
    }

    if (*classify) {
      std::filesystem::path db_path;
      const DatabaseCatalog cat = LoadCatalogFor(classify_db, &db_path);
      const ExecutionOutcome pred = Execute(db_path, pred_sql);
      const ExecutionOutcome gold_outcome = Execute(db_path, gold_sql);
      if (!gold_outcome.ok()) {
        throw DataError("gold SQL failed: " + gold_outcome.error_message);
      }
      if (ResultsMatch(pred, gold_outcome, gold_sql)) {
        out << json{{"correct", true}}.dump() << std::endl;
        return 0;
      }
      const ErrorDiagnosis d =
          Classify(pred_sql, gold_sql, pred, &cat, classify_question, nullptr);
      json j = {{"correct", false},
                {"kind", d.kind == ErrorKind::kSystemError ? "system_error" : "result_error"}};
      if (d.kind == ErrorKind::kSystemError) j["system_message"] = d.system_message;
      if (d.subcategory) {
        j["subcategory"] = SubcategoryName(*d.subcategory);
        j["comment"] = d.comment;
      }
      j["unverified"] = d.unverified;
      j["parse_degraded"] = d.parse_degraded;
      out << j.dump() << std::endl;
      return 0;
    }
  } catch (const Error& e) {
    return Fail(err, e.error_class(), e.what());
  } catch (const std::exception& e) {
    return Fail(err, ErrorClass::kInternal, e.what());
  }
  return Fail(err, ErrorClass::kInternal, "no command handled");
}

}  // namespace sqlbench
