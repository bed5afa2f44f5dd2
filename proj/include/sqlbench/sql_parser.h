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

#ifndef SQLBENCH_SQL_PARSER_H_
#define SQLBENCH_SQL_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "sqlbench/sql_ast.h"

namespace sqlbench::sql {

enum class TokenKind {
  kIdentifier,        // bare word, possibly a keyword
  kQuotedIdentifier,  // "x", `x` or [x]
  kString,            // 'x'
  kNumber,
  kBlob,
  kParameter,
  kOperator,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string text;  // unquoted text for identifiers and strings
  size_t position;
  char quote = 0;    // opening quote character for quoted identifiers
};

// Splits SQLite-dialect SQL into tokens. Comments are dropped.
// Throws ParseError on unterminated literals or unknown characters.
std::vector<Token> Tokenize(std::string_view sql);

// Parses a single SELECT / WITH / VALUES statement, optionally terminated by
// one semicolon. Throws ParseError carrying the byte offset on failure.
Query Parse(std::string_view sql);

}  // namespace sqlbench::sql

#endif  // SQLBENCH_SQL_PARSER_H_
