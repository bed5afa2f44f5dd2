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

#include "sqlbench/prompt.h"

#include <sstream>

#include "sqlbench/error.h"
#include "sqlbench/strings.h"

namespace sqlbench {
namespace {

constexpr std::string_view kMdInstruction =
    "### Answer the question by sqlite SQL query only and with no explanation";
constexpr std::string_view kMdEfficiencyInstruction =
    "### Answer the question by sqlite SQL query only and with no "
    "explanation. Generate the most efficient SQL query.";
constexpr std::string_view kMdSchemaHeader =
    "### Sqlite SQL tables, with their properties:";

// Joins lines, strips trailing whitespace from each and drops the final
// newline so equal inputs always give equal bytes.
std::string Finish(const std::vector<std::string>& lines) {
  std::string text = RightTrimLines(Join(lines, "\n"));
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

void AppendLines(std::vector<std::string>& out, std::string_view block,
                 std::string_view prefix = "") {
  for (const auto& line : Split(block, '\n')) {
    out.push_back(std::string(prefix) + line);
  }
}

std::string ForeignKeyLine(const ForeignKey& fk) {
  return fk.child_table + "(" + fk.child_column + ") REFERENCES " +
         fk.parent_table + "(" + fk.parent_column + ")";
}

std::string SimpleTable(const TableSchema& table) {
  std::vector<std::string> names;
  for (const auto& column : table.columns) names.push_back(column.name);
  return table.name + "(" + Join(names, ",") + ")";
}

std::string DdlTable(const DatabaseCatalog& catalog, const TableSchema& table,
                     bool with_fk) {
  int pk_count = 0;
  for (const auto& column : table.columns) pk_count += column.is_primary_key;
  std::vector<std::string> parts;
  for (const auto& column : table.columns) {
    std::string part = ToLower(column.name);
    if (!column.declared_type.empty()) part += " " + column.declared_type;
    if (column.is_primary_key && pk_count == 1) part += " PRIMARY KEY";
    parts.push_back(std::move(part));
  }
  if (pk_count > 1) {
    std::vector<std::string> keys;
    for (const auto& column : table.columns) {
      if (column.is_primary_key) keys.push_back(ToLower(column.name));
    }
    parts.push_back("PRIMARY KEY (" + Join(keys, ", ") + ")");
  }
  if (with_fk) {
    for (const auto& fk : catalog.foreign_keys) {
      if (!EqualsIgnoreCase(fk.child_table, table.name)) continue;
      parts.push_back("FOREIGN KEY (" + ToLower(fk.child_column) +
                      ") REFERENCES " + fk.parent_table + "(" +
                      ToLower(fk.parent_column) + ")");
    }
  }
  return "CREATE TABLE " + table.name + " (" + Join(parts, ", ") + ");";
}

void RequireCatalog(const DatabaseCatalog& catalog) {
  if (catalog.tables.empty()) {
    throw ArgumentError("catalog '" + catalog.db_id + "' has no tables");
  }
}

// "# table(cols)" block used inside markdown-style prompts.
void AppendHashSchema(std::vector<std::string>& out,
                      const DatabaseCatalog& catalog) {
  out.push_back("#");
  AppendLines(out, RenderSchema(catalog, SchemaStyle::kSimpleDdl, false), "# ");
  out.push_back("#");
}

// Table comments sometimes run a comma into the next word; prompts always
// put a space after it.
std::string SpaceAfterCommas(std::string_view text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    out += text[i];
    if (text[i] == ',' && i + 1 < text.size() && text[i + 1] != ' ') {
      out += ' ';
    }
  }
  return out;
}

}  // namespace

std::string TemplateSpec::Name() const {
  std::string name = schema_style == SchemaStyle::kDdl ? "DDL" : "SimpleDDL";
  switch (wrap_style) {
    case WrapStyle::kMarkdown: name += "-MD"; break;
    case WrapStyle::kHtml: name += "-HTML"; break;
    case WrapStyle::kCoding: name += "-Coding"; break;
  }
  name += answer_style == AnswerStyle::kChat ? "-Chat" : "-Complete";
  if (efficiency_variant) name += "-Efficiency";
  if (include_foreign_keys) name += "+fk";
  return name;
}

TemplateSpec TemplateSpec::FromName(std::string_view name) {
  TemplateSpec spec;
  std::string rest(name);
  if (EndsWith(rest, "+fk")) {
    spec.include_foreign_keys = true;
    rest.resize(rest.size() - 3);
  }
  auto parts = Split(rest, '-');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("unknown template '" + std::string(name) + "'");
  }
  if (parts[0] == "DDL") {
    spec.schema_style = SchemaStyle::kDdl;
  } else if (parts[0] == "SimpleDDL") {
    spec.schema_style = SchemaStyle::kSimpleDdl;
  } else {
    throw ConfigError("unknown schema style '" + parts[0] + "'");
  }
  if (parts[1] == "MD") {
    spec.wrap_style = WrapStyle::kMarkdown;
  } else if (parts[1] == "HTML") {
    spec.wrap_style = WrapStyle::kHtml;
  } else if (parts[1] == "Coding") {
    spec.wrap_style = WrapStyle::kCoding;
  } else {
    throw ConfigError("unknown wrap style '" + parts[1] + "'");
  }
  if (parts[2] == "Chat") {
    spec.answer_style = AnswerStyle::kChat;
  } else if (parts[2] == "Complete") {
    spec.answer_style = AnswerStyle::kComplete;
  } else {
    throw ConfigError("unknown answer style '" + parts[2] + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] != "Efficiency") {
      throw ConfigError("unknown template suffix '" + parts[3] + "'");
    }
    spec.efficiency_variant = true;
  }
  spec.Validate();
  return spec;
}

void TemplateSpec::Validate() const {
  if (efficiency_variant &&
      (schema_style != SchemaStyle::kSimpleDdl ||
       wrap_style != WrapStyle::kMarkdown ||
       answer_style != AnswerStyle::kChat)) {
    throw ConfigError("efficiency variant requires SimpleDDL-MD-Chat, got " +
                      Name());
  }
}

std::vector<TemplateSpec> StandardTemplatePresets() {
  std::vector<TemplateSpec> out;
  for (const char* name :
       {"DDL-HTML-Chat", "DDL-HTML-Complete", "DDL-MD-Chat", "DDL-MD-Complete",
        "DDL-Coding-Chat", "DDL-Coding-Complete", "SimpleDDL-MD-Chat",
        "SimpleDDL-MD-Complete"}) {
    out.push_back(TemplateSpec::FromName(name));
  }
  return out;
}

std::vector<TemplateSpec> AllTemplateCombinations() {
  std::vector<TemplateSpec> out;
  for (auto schema : {SchemaStyle::kDdl, SchemaStyle::kSimpleDdl}) {
    for (auto wrap :
         {WrapStyle::kMarkdown, WrapStyle::kHtml, WrapStyle::kCoding}) {
      for (auto answer : {AnswerStyle::kChat, AnswerStyle::kComplete}) {
        TemplateSpec spec;
        spec.schema_style = schema;
        spec.wrap_style = wrap;
        spec.answer_style = answer;
        out.push_back(spec);
      }
    }
  }
  return out;
}

std::string AnswerModeName(AnswerMode mode) {
  switch (mode) {
    case AnswerMode::kFreeSql: return "free_sql";
    case AnswerMode::kCompletionAfterSelect: return "completion_after_select";
    case AnswerMode::kBracketedTableList: return "bracketed_table_list";
    case AnswerMode::kQuestionText: return "question_text";
    case AnswerMode::kTrueFalse: return "true_false";
    case AnswerMode::kErrorCategory: return "error_category";
  }
  return "free_sql";
}

std::string RenderSchema(const DatabaseCatalog& catalog, SchemaStyle style,
                         bool with_fk) {
  RequireCatalog(catalog);
  std::vector<std::string> lines;
  if (style == SchemaStyle::kDdl) {
    for (const auto& table : catalog.tables) {
      lines.push_back(DdlTable(catalog, table, with_fk));
    }
    return Join(lines, "\n");
  }
  for (size_t i = 0; i < catalog.tables.size(); ++i) {
    lines.push_back(SimpleTable(catalog.tables[i]) +
                    (i + 1 == catalog.tables.size() ? "." : ";"));
  }
  if (with_fk && !catalog.foreign_keys.empty()) {
    lines.push_back("Foreign key:");
    for (const auto& fk : catalog.foreign_keys) {
      lines.push_back(ForeignKeyLine(fk));
    }
  }
  return Join(lines, "\n");
}

RenderedPrompt RenderText2Sql(const DatabaseCatalog& catalog,
                              std::string_view question,
                              const TemplateSpec& spec) {
  spec.Validate();
  RequireCatalog(catalog);
  const bool complete = spec.answer_style == AnswerStyle::kComplete;
  const bool simple = spec.schema_style == SchemaStyle::kSimpleDdl;
  const std::string schema =
      RenderSchema(catalog, spec.schema_style, spec.include_foreign_keys);
  const std::string q(question);
  std::vector<std::string> lines;
  switch (spec.wrap_style) {
    case WrapStyle::kMarkdown:
      lines.emplace_back(spec.efficiency_variant ? kMdEfficiencyInstruction
                                                 : kMdInstruction);
      lines.emplace_back(kMdSchemaHeader);
      if (simple) {
        lines.push_back("#");
        AppendLines(lines, schema, "# ");
        lines.push_back("#");
        lines.push_back("### " + q);
      } else {
        AppendLines(lines, schema);
        lines.push_back("### Question: " + q);
      }
      lines.push_back(complete ? "### SQL: SELECT" : "### SQL:");
      break;
    case WrapStyle::kHtml:
      lines.push_back(
          "Figure out corresponding SQLite SQL Query of Question according to "
          "database.");
      lines.push_back("<Database>");
      AppendLines(lines, schema);
      lines.push_back("</Database>");
      lines.push_back("<Question>" + q + "</Question>");
      if (complete) lines.push_back("<SQL> SELECT");
      break;
    case WrapStyle::kCoding:
      lines.push_back("/* Given the following database schema: */");
      if (simple) {
        AppendLines(lines, schema);
      } else {
        std::vector<std::string> tables = Split(schema, '\n');
        lines.push_back(Join(tables, "\n\n"));
      }
      lines.push_back("");
      lines.push_back(
          "/* Answer the following by SQLite SQL Query according to database: " +
          q + " */");
      lines.push_back("/* SQL Query here*/");
      if (complete) lines.push_back("SELECT");
      break;
  }
  return {Finish(lines), spec.Name(),
          complete ? AnswerMode::kCompletionAfterSelect : AnswerMode::kFreeSql};
}

std::string DebugStrategyName(DebugStrategy strategy) {
  switch (strategy) {
    case DebugStrategy::kRegenerate: return "regenerate";
    case DebugStrategy::kWrongSql: return "wrong_sql";
    case DebugStrategy::kWrongSqlSystem: return "wrong_sql_system";
    case DebugStrategy::kWrongSqlAll: return "wrong_sql_all";
    case DebugStrategy::kWrongSqlAllComment: return "wrong_sql_all_comment";
  }
  return "regenerate";
}

std::string DebugStrategyTitle(DebugStrategy strategy) {
  switch (strategy) {
    case DebugStrategy::kRegenerate: return "Regenerate";
    case DebugStrategy::kWrongSql: return "w/ Wrong SQL";
    case DebugStrategy::kWrongSqlSystem: return "w/ Wrong SQL + System_error_info";
    case DebugStrategy::kWrongSqlAll: return "w/ Wrong SQL + All_error_info";
    case DebugStrategy::kWrongSqlAllComment:
      return "w/ Wrong SQL + All_error_info + Comment";
  }
  return "Regenerate";
}

DebugStrategy ParseDebugStrategy(std::string_view name) {
  for (auto strategy : kAllDebugStrategies) {
    if (name == DebugStrategyName(strategy)) return strategy;
  }
  throw ConfigError("unknown debug strategy '" + std::string(name) + "'");
}

bool StrategyNeedsDiagnosis(DebugStrategy strategy) {
  return strategy == DebugStrategy::kWrongSqlSystem ||
         strategy == DebugStrategy::kWrongSqlAll ||
         strategy == DebugStrategy::kWrongSqlAllComment;
}

RenderedPrompt RenderDebug(const DatabaseCatalog& catalog,
                           std::string_view question, std::string_view wrong_sql,
                           DebugStrategy strategy,
                           const ErrorDiagnosis* diagnosis,
                           const TemplateSpec& base) {
  if (strategy == DebugStrategy::kRegenerate) {
    return RenderText2Sql(catalog, question, base);
  }
  if (Trim(wrong_sql).empty()) {
    throw ArgumentError("debug strategy " + DebugStrategyName(strategy) +
                        " needs the wrong SQL");
  }
  if (StrategyNeedsDiagnosis(strategy) && diagnosis == nullptr) {
    throw ArgumentError("debug strategy " + DebugStrategyName(strategy) +
                        " needs an error diagnosis");
  }
  RequireCatalog(catalog);
  std::vector<std::string> lines;
  lines.push_back(
      "### Write the correct SQLite SQL Query corresponding to the Question "
      "based on the database, the Wrong SQL Query and the cause of the error.");
  lines.emplace_back(kMdSchemaHeader);
  AppendHashSchema(lines, catalog);
  lines.push_back("### Question: " + std::string(question));
  lines.push_back("### Wrong SQL Query:");
  AppendLines(lines, wrong_sql);
  if (StrategyNeedsDiagnosis(strategy)) {
    lines.push_back("### Error Information:");
    if (diagnosis->kind == ErrorKind::kSystemError) {
      AppendLines(lines, diagnosis->system_message);
    } else {
      lines.emplace_back(kRoughResultError);
      if (diagnosis->subcategory) {
        if (strategy == DebugStrategy::kWrongSqlAll) {
          lines.push_back("Error type: " +
                          SubcategoryGroup(*diagnosis->subcategory) + " (" +
                          SubcategoryTitle(*diagnosis->subcategory) + ")");
        } else if (strategy == DebugStrategy::kWrongSqlAllComment) {
          const std::string& comment = diagnosis->comment.empty()
                                           ? CommentFor(*diagnosis->subcategory)
                                           : diagnosis->comment;
          lines.push_back(SpaceAfterCommas(comment));
        }
      }
    }
  }
  lines.push_back("### Correct SQL:");
  return {Finish(lines), "debug-" + DebugStrategyName(strategy),
          AnswerMode::kFreeSql};
}

std::string OptimizationVariantName(OptimizationVariant variant) {
  switch (variant) {
    case OptimizationVariant::kYOnly: return "y_only";
    case OptimizationVariant::kYSchema: return "y_schema";
    case OptimizationVariant::kYSchemaQuestion: return "y_schema_q";
    case OptimizationVariant::kDemo: return "demo";
    case OptimizationVariant::kDemoComments: return "demo_comments";
  }
  return "y_only";
}

OptimizationVariant ParseOptimizationVariant(std::string_view name) {
  for (auto variant :
       {OptimizationVariant::kYOnly, OptimizationVariant::kYSchema,
        OptimizationVariant::kYSchemaQuestion, OptimizationVariant::kDemo,
        OptimizationVariant::kDemoComments}) {
    if (name == OptimizationVariantName(variant)) return variant;
  }
  throw ConfigError("unknown optimization variant '" + std::string(name) + "'");
}

RenderedPrompt RenderOptimization(std::string_view sql,
                                  const DatabaseCatalog* catalog,
                                  std::optional<std::string_view> question,
                                  OptimizationVariant variant) {
  if (Trim(sql).empty()) throw ArgumentError("optimization needs a SQL query");
  const bool demo = variant == OptimizationVariant::kDemo ||
                    variant == OptimizationVariant::kDemoComments;
  const bool needs_schema = variant != OptimizationVariant::kYOnly;
  const bool needs_question = variant == OptimizationVariant::kYSchemaQuestion || demo;
  if (needs_schema && catalog == nullptr) {
    throw ArgumentError("optimization variant " +
                        OptimizationVariantName(variant) + " needs a schema");
  }
  if (needs_question && !question) {
    throw ArgumentError("optimization variant " +
                        OptimizationVariantName(variant) + " needs a question");
  }
  std::vector<std::string> lines;
  lines.push_back(
      "### Rewrite and optimize the given SQL query to improve SQL query "
      "efficiency and minimize SQL execution time while ensuring correctness. "
      "Only output sql query, do not output any other content.Only output sql "
      "query, do not output any other content.");
  if (demo) {
    const bool comments = variant == OptimizationVariant::kDemoComments;
    lines.push_back("### Here are some reference cases:");
    lines.push_back("#");
    lines.push_back(
        "# Question: List out the age of users who located in Vienna, Austria "
        "obtained the badge?");
    lines.push_back(
        "# SQL Query: SELECT Age FROM users WHERE Location = 'Vienna, Austria' "
        "AND Id IN (SELECT UserId FROM badges)");
    lines.push_back(
        "# New SQL Query: SELECT u.Age FROM users AS u INNER JOIN badges AS b "
        "ON u.Id = b.UserId WHERE u.Location = 'Vienna, Austria'");
    if (comments) {
      lines.push_back(
          "# Explanation: By applying a JOIN operation instead of a subquery "
          "with IN can improve efficiency, as the database may execute the "
          "JOIN and filtering processes concurrently in just one operation "
          "without the need to store the intermediate results to filter "
          "primary query.");
    }
    lines.push_back("#");
    lines.push_back("# Question: How many posts have a score greater than 10?");
    lines.push_back("# SQL Query: SELECT COUNT(*) FROM posts WHERE Score > 10");
    lines.push_back(
        "# New SQL Query: SELECT COUNT(Id) FROM posts WHERE Score > 10");
    if (comments) {
      lines.push_back(
          "# Explanation: Counting a NOT NULL key column instead of COUNT(*) "
          "lets the database answer from the key index without reading whole "
          "rows.");
    }
    lines.push_back("#");
  }
  if (needs_schema) {
    lines.emplace_back(kMdSchemaHeader);
    AppendHashSchema(lines, *catalog);
  }
  if (needs_question) lines.push_back("### Question: " + std::string(*question));
  lines.push_back("### SQL Query:" + std::string(sql));
  lines.push_back("### New SQL Query:");
  return {Finish(lines), "optimization-" + OptimizationVariantName(variant),
          AnswerMode::kFreeSql};
}

RenderedPrompt RenderSql2Text(std::string_view sql,
                              std::optional<std::string_view> evidence) {
  if (Trim(sql).empty()) throw ArgumentError("sql2text needs a SQL query");
  std::vector<std::string> lines = {
      "<Instruction>",
      "You are an expert in database analysis and processing of SQL "
      "statements.",
      "I will provide an SQL statement and relevant evidence. You need to help "
      "me analyze what problem this SQL statement is solving.",
      "Here are some reference cases:",
      "SQL:SELECT list_id FROM lists_users WHERE user_id = 85981819 ORDER BY "
      "list_creation_date_utc ASC LIMIT 1",
      "question:What is the list ID that was first created by user 85981819?",
      "SQL:SELECT COUNT(T2.user_id) FROM movies AS T1 INNER JOIN ratings AS T2 "
      "ON T1.movie_id = T2.movie_id WHERE T1.movie_title = 'Pavee Lackeen: The "
      "Traveller Girl' AND T2.rating_score = 4",
      "question:How many users gave \"Pavee Lackeen: The Traveller Girl\" "
      "movie a rating score of 4?",
      "Please answer strictly in the following format and do not change the "
      "format arbitrarily:",
      "question:This is a problem description.",
      "</Instruction>",
      "<SQL>" + std::string(sql) + "</SQL>",
  };
  if (evidence && !Trim(*evidence).empty()) {
    lines.push_back("<Evidence>" + std::string(*evidence) + "</Evidence>");
  }
  return {Finish(lines), "sql2text", AnswerMode::kQuestionText};
}

namespace {

void AppendLinkingSchema(std::vector<std::string>& out,
                         const DatabaseCatalog& catalog, bool with_fk) {
  for (const auto& table : catalog.tables) {
    out.push_back("# " + SimpleTable(table));
  }
  if (with_fk && !catalog.foreign_keys.empty()) {
    out.push_back("Foreign key:");
    for (const auto& fk : catalog.foreign_keys) out.push_back(ForeignKeyLine(fk));
  }
}

const char* const kFewShotExemplars[] = {
    "Schema:",
    "# department(Department_ID,Name,Creation,Ranking,Budget_in_Billions,"
    "Num_Employees)",
    "# head(head_ID,name,born_state,age)",
    "# management(department_ID,head_ID,temporary_acting)",
    "Foreign key:",
    "management(department_ID) REFERENCES department(Department_ID)",
    "management(head_ID) REFERENCES head(head_ID)",
    "Question: what are the distinct creation years of the departments "
    "managed by a secretary born in state 'Alabama'?",
    "Answer: [\"department\",\"management\",\"head\"]",
    "",
    "Schema:",
    "# Country(id,name)",
    "# League(id,country_id,name)",
    "# Player(id,player_api_id,player_name,player_fifa_api_id,birthday,height,"
    "weight)",
    "# Player_Attributes(id,player_fifa_api_id,player_api_id,date,"
    "overall_rating,potential,preferred_foot,attacking_work_rate,"
    "defensive_work_rate,crossing,finishing,heading_accuracy,short_passing,"
    "volleys,dribbling,curve,free_kick_accuracy,long_passing,ball_control,"
    "acceleration,sprint_speed,agility,reactions,balance,shot_power,jumping,"
    "stamina,strength,long_shots,aggression,interceptions,positioning,vision,"
    "penalties,marking,standing_tackle,sliding_tackle,gk_diving,gk_handling,"
    "gk_kicking,gk_positioning,gk_reflexes)",
    "# Team(id,team_api_id,team_fifa_api_id,team_long_name,team_short_name)",
    "# Team_Attributes(id,team_fifa_api_id,team_api_id,date,buildUpPlaySpeed,"
    "buildUpPlaySpeedClass,buildUpPlayDribbling,buildUpPlayDribblingClass,"
    "buildUpPlayPassing,buildUpPlayPassingClass,buildUpPlayPositioningClass,"
    "chanceCreationPassing,chanceCreationPassingClass,chanceCreationCrossing,"
    "chanceCreationCrossingClass,chanceCreationShooting,"
    "chanceCreationShootingClass,chanceCreationPositioningClass,"
    "defencePressure,defencePressureClass,defenceAggression,"
    "defenceAggressionClass,defenceTeamWidth,defenceTeamWidthClass,"
    "defenceDefenderLineClass)",
    "# sqlite_sequence(name,seq)",
    "Foreign key:",
    "Player_Attributes(player_api_id) REFERENCES Player(player_api_id)",
    "League(country_id) REFERENCES country(id)",
    "Team_Attributes(team_api_id) REFERENCES Team(team_api_id)",
    "Match(away_player_11) REFERENCES Player(player_api_id)",
    "Question: List the names of all left-footed players who have overall "
    "rating between 85 and 90.",
    "Answer: [\"Player\",\"Player_Attributes\"]",
    "",
};

}  // namespace

RenderedPrompt RenderLinking(const DatabaseCatalog& catalog,
                             std::string_view question,
                             LinkingPromptMethod method, bool with_fk) {
  RequireCatalog(catalog);
  std::vector<std::string> lines;
  lines.push_back(
      "Given the database schema and question, perform the following actions:");
  if (method == LinkingPromptMethod::kZeroShot) {
    lines.push_back(
        "1 - Rank all the tables based on the possibility of being used in the "
        "SQL according to the question from the most relevant to the least "
        "relevant, Table or its column that matches more with the question "
        "words is highly relevant and must be placed ahead.");
    lines.push_back("2 - Check whether you consider all the tables.");
    lines.push_back(
        "3 - Output a list object in the order of step 2, Your output should "
        "contain all the tables. The format should be like:");
    lines.push_back("[");
    lines.push_back("    \"table_1\", \"table_2\", ...");
    lines.push_back("]");
    lines.push_back("");
  } else {
    lines.push_back(
        "1 - Evaluate the importance of each table **in relation to the SQL "
        "query**, prioritizing tables and columns that closely match the "
        "question words. Rank the tables from the most crucial to the least "
        "crucial.");
    lines.push_back(
        "2 - Focus on identifying and listing only the most important tables "
        "based on the evaluation in step 1.");
    lines.push_back(
        "3 - Output a list object representing the order determined in step 2. "
        "The output should include **the most important tables** and follow "
        "this format:");
    lines.push_back("[");
    lines.push_back(
        "    \"most_important_table_1\", \"most_important_table_2\", ...");
    lines.push_back("]");
    lines.push_back("");
    for (const char* line : kFewShotExemplars) lines.emplace_back(line);
  }
  lines.push_back("Database schemas with their properties:");
  AppendLinkingSchema(lines, catalog, with_fk);
  lines.push_back("");
  lines.push_back("Question: " + std::string(question));
  if (method == LinkingPromptMethod::kZeroShot) {
    lines.push_back(
        "Answer(Only output the list object containing all tables, do not "
        "output other content):");
  } else {
    lines.push_back("Answer:");
  }
  return {Finish(lines),
          method == LinkingPromptMethod::kZeroShot ? "linking-zero-shot"
                                                   : "linking-few-shot",
          AnswerMode::kBracketedTableList};
}

RenderedPrompt RenderErrorClassification(std::string_view question,
                                         std::string_view gold_sql,
                                         std::string_view wrong_sql) {
  if (Trim(wrong_sql).empty() || Trim(gold_sql).empty()) {
    throw ArgumentError("error classification needs both SQL queries");
  }
  std::vector<std::string> lines = {
      "You are an expert in SQL queries. Please provide the error categories "
      "for incorrect SQL queries based on the Question and the correct SQL "
      "query.",
      "Please think step by step and check for the following errors in order:",
      "1. Condition Filter Error: Incorrect filtering of conditions.",
      "2. Data Processing Error:The condition is filtered correctly, but the "
      "data processing is wrong. Note that the premise of this error is that "
      "the conditional filtering is correct.",
      "",
      "Question: " + std::string(question),
      "Correct SQL Query: " + std::string(gold_sql),
      "Wrong SQL Query: " + std::string(wrong_sql),
      "",
      "Give your Thought and Answer based on the information above.",
  };
  return {Finish(lines), "error-classification", AnswerMode::kErrorCategory};
}

RenderedPrompt RenderConsistency(std::string_view sentence1,
                                 std::string_view sentence2) {
  std::vector<std::string> lines = {
      "<Instruction>Determine whether the following two sentences ask the "
      "same question and whether their corresponding answers are the "
      "same.</Instruction>",
      "<sentence1>" + std::string(sentence1) + "</sentence1>",
      "<sentence2>" + std::string(sentence2) + "</sentence2>",
      "<Question>Just output True or False, do not output anything "
      "else</Question>",
  };
  return {Finish(lines), "consistency", AnswerMode::kTrueFalse};
}

}  // namespace sqlbench
