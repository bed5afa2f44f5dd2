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

#include "sqlbench/sql_parser.h"

#include <cctype>
#include <set>
#include <utility>

#include "sqlbench/error.h"
#include "sqlbench/strings.h"

namespace sqlbench::sql {
namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsIdentChar(char c) {
  return IsIdentStart(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '$';
}

// Words that terminate an expression or clause and so can never be an
// implicit alias or bare column name.
const std::set<std::string>& ReservedWords() {
  static const std::set<std::string> kWords = {
      "ALL",     "AND",       "AS",      "ASC",     "BETWEEN", "BY",
      "CASE",    "CAST",      "COLLATE", "CROSS",   "DESC",    "DISTINCT",
      "ELSE",    "END",       "ESCAPE",  "EXCEPT",  "EXISTS",  "FROM",
      "FULL",    "GLOB",      "GROUP",   "HAVING",  "IN",      "INNER",
      "INTERSECT", "IS",      "ISNULL",  "JOIN",    "LEFT",    "LIKE",
      "LIMIT",   "MATCH",     "NATURAL", "NOT",     "NOTNULL", "NULL",
      "OFFSET",  "ON",        "OR",      "ORDER",   "OUTER",   "REGEXP",
      "RIGHT",   "SELECT",    "THEN",    "UNION",   "USING",   "VALUES",
      "WHEN",    "WHERE",     "WINDOW",  "WITH",    "NULLS",   "FILTER",
      "OVER",    "INDEXED",
  };
  return kWords;
}

// Reserved above, yet SQLite still accepts them as table or column names.
const std::set<std::string>& FallbackNames() {
  static const std::set<std::string> kWords = {
      "ASC",  "BY",    "DESC",  "END",    "FILTER", "GLOB",    "INDEXED",
      "LIKE", "MATCH", "NULLS", "OFFSET", "OVER",   "REGEXP",  "WINDOW",
      "WITH",
  };
  return kWords;
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<Token> Tokenize(std::string_view sql) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = sql.size();
  while (i < n) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && sql[i + 1] == '-') {
      while (i < n && sql[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && sql[i + 1] == '*') {
      size_t end = sql.find("*/", i + 2);
      i = end == std::string_view::npos ? n : end + 2;
      continue;
    }
    const size_t start = i;
    if ((c == 'x' || c == 'X') && i + 1 < n && sql[i + 1] == '\'') {
      size_t end = sql.find('\'', i + 2);
      if (end == std::string_view::npos)
        throw ParseError("unterminated blob literal", start);
      tokens.push_back({TokenKind::kBlob,
                        std::string(sql.substr(i + 2, end - i - 2)), start});
      i = end + 1;
      continue;
    }
    if (IsIdentStart(c)) {
      while (i < n && IsIdentChar(sql[i])) ++i;
      tokens.push_back(
          {TokenKind::kIdentifier, std::string(sql.substr(start, i - start)),
           start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n &&
         std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      if (c == '0' && i + 1 < n && (sql[i + 1] == 'x' || sql[i + 1] == 'X')) {
        i += 2;
        while (i < n && std::isxdigit(static_cast<unsigned char>(sql[i]))) ++i;
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(sql[i])) ||
                         sql[i] == '_'))
          ++i;
        if (i < n && sql[i] == '.') {
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
        }
        if (i < n && (sql[i] == 'e' || sql[i] == 'E')) {
          size_t j = i + 1;
          if (j < n && (sql[j] == '+' || sql[j] == '-')) ++j;
          if (j < n && std::isdigit(static_cast<unsigned char>(sql[j]))) {
            i = j;
            while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
          }
        }
      }
      if (i < n && IsIdentStart(sql[i]))
        throw ParseError("malformed number", start);
      tokens.push_back(
          {TokenKind::kNumber, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '\'' || c == '"' || c == '`' || c == '[') {
      const char close = c == '[' ? ']' : c;
      std::string text;
      ++i;
      bool closed = false;
      while (i < n) {
        if (sql[i] == close) {
          if (close != ']' && i + 1 < n && sql[i + 1] == close) {
            text.push_back(close);
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        text.push_back(sql[i++]);
      }
      if (!closed) throw ParseError("unterminated quoted token", start);
      Token token{c == '\'' ? TokenKind::kString : TokenKind::kQuotedIdentifier,
                  std::move(text), start};
      token.quote = c;
      tokens.push_back(std::move(token));
      continue;
    }
    if (c == '?' || c == ':' || c == '@' || c == '$') {
      ++i;
      while (i < n && IsIdentChar(sql[i])) ++i;
      tokens.push_back({TokenKind::kParameter,
                        std::string(sql.substr(start, i - start)), start});
      continue;
    }
    static const char* kMulti[] = {"->>", "||", "<<", ">>", "<=", ">=", "==",
                                   "!=",  "<>", "->"};
    bool matched = false;
    for (const char* op : kMulti) {
      std::string_view v(op);
      if (sql.substr(i, v.size()) == v) {
        tokens.push_back({TokenKind::kOperator, std::string(v), start});
        i += v.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("+-*/%<>=~&|(),;.").find(c) != std::string_view::npos) {
      tokens.push_back({TokenKind::kOperator, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  tokens.push_back({TokenKind::kEnd, "", n});
  return tokens;
}

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Query ParseStatement() {
    if (!PeekKeyword("SELECT") && !PeekKeyword("WITH") &&
        !PeekKeyword("VALUES")) {
      Fail("expected SELECT, WITH or VALUES");
    }
    Query query = ParseQuery();
    AcceptOperator(";");
    if (Peek().kind != TokenKind::kEnd) Fail("unexpected trailing input");
    return query;
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t idx = pos_ + ahead;
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
  }

  const Token& Next() {
    const Token& t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Peek();
    std::string near = t.kind == TokenKind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + " near " + near, t.position);
  }

  bool PeekKeyword(std::string_view kw, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kIdentifier && EqualsIgnoreCase(t.text, kw);
  }

  bool AcceptKeyword(std::string_view kw) {
    if (!PeekKeyword(kw)) return false;
    Next();
    return true;
  }

  void ExpectKeyword(std::string_view kw) {
    if (!AcceptKeyword(kw)) Fail("expected " + std::string(kw));
  }

  bool PeekOperator(std::string_view op, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kOperator && t.text == op;
  }

  bool AcceptOperator(std::string_view op) {
    if (!PeekOperator(op)) return false;
    Next();
    return true;
  }

  void ExpectOperator(std::string_view op) {
    if (!AcceptOperator(op)) Fail("expected '" + std::string(op) + "'");
  }

  bool IsReserved(const Token& t) const {
    return t.kind == TokenKind::kIdentifier &&
           ReservedWords().count(Upper(t.text)) > 0;
  }

  // A token usable as a name: bare non-reserved word or quoted identifier.
  bool PeekName(size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    if (t.kind == TokenKind::kQuotedIdentifier) return true;
    return t.kind == TokenKind::kIdentifier && !IsReserved(t);
  }

  std::string ExpectName() {
    if (!PeekName()) Fail("expected identifier");
    return Next().text;
  }

  // Where only an object name can appear: after FROM/JOIN, around '.'.
  bool PeekObjectName(size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return PeekName(ahead) ||
           (t.kind == TokenKind::kIdentifier && FallbackNames().count(Upper(t.text)));
  }

  std::string ExpectObjectName() {
    if (!PeekObjectName()) Fail("expected identifier");
    return Next().text;
  }

  // AS alias, or an implicit alias word.
  std::string ParseOptionalAlias() {
    if (AcceptKeyword("AS")) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kString || t.kind == TokenKind::kIdentifier ||
          t.kind == TokenKind::kQuotedIdentifier) {
        return Next().text;
      }
      Fail("expected alias");
    }
    if (PeekName() || Peek().kind == TokenKind::kString) return Next().text;
    return "";
  }

  Query ParseQuery() {
    Query query;
    if (AcceptKeyword("WITH")) {
      query.recursive = AcceptKeyword("RECURSIVE");
      do {
        CommonTableExpression cte;
        cte.name = ExpectName();
        if (AcceptOperator("(")) {
          do {
            cte.columns.push_back(ExpectName());
          } while (AcceptOperator(","));
          ExpectOperator(")");
        }
        ExpectKeyword("AS");
        if (AcceptKeyword("NOT")) ExpectKeyword("MATERIALIZED");
        else AcceptKeyword("MATERIALIZED");
        ExpectOperator("(");
        cte.query = std::make_unique<Query>(ParseQuery());
        ExpectOperator(")");
        query.ctes.push_back(std::move(cte));
      } while (AcceptOperator(","));
    }
    query.cores.push_back(ParseCore());
    while (true) {
      std::string op;
      if (AcceptKeyword("UNION")) {
        op = AcceptKeyword("ALL") ? "UNION ALL" : "UNION";
      } else if (AcceptKeyword("INTERSECT")) {
        op = "INTERSECT";
      } else if (AcceptKeyword("EXCEPT")) {
        op = "EXCEPT";
      } else {
        break;
      }
      query.compound_operators.push_back(op);
      query.cores.push_back(ParseCore());
    }
    if (AcceptKeyword("ORDER")) {
      ExpectKeyword("BY");
      query.order_by = ParseOrderingTerms();
    }
    if (AcceptKeyword("LIMIT")) {
      query.limit = ParseExpr();
      if (AcceptKeyword("OFFSET")) {
        query.offset = ParseExpr();
      } else if (AcceptOperator(",")) {
        // LIMIT offset, count
        query.offset = std::move(query.limit);
        query.limit = ParseExpr();
      }
    }
    return query;
  }

  std::vector<OrderingTerm> ParseOrderingTerms() {
    std::vector<OrderingTerm> terms;
    do {
      OrderingTerm term;
      term.expr = ParseExpr();
      if (AcceptKeyword("DESC")) term.descending = true;
      else AcceptKeyword("ASC");
      if (AcceptKeyword("NULLS")) {
        if (!AcceptKeyword("FIRST") && !AcceptKeyword("LAST"))
          Fail("expected FIRST or LAST");
      }
      terms.push_back(std::move(term));
    } while (AcceptOperator(","));
    return terms;
  }

  SelectCore ParseCore() {
    SelectCore core;
    if (AcceptKeyword("VALUES")) {
      core.is_values = true;
      do {
        ExpectOperator("(");
        std::vector<ExprPtr> row;
        do {
          row.push_back(ParseExpr());
        } while (AcceptOperator(","));
        ExpectOperator(")");
        core.values_rows.push_back(std::move(row));
      } while (AcceptOperator(","));
      return core;
    }
    ExpectKeyword("SELECT");
    if (AcceptKeyword("DISTINCT")) core.distinct = true;
    else AcceptKeyword("ALL");
    do {
      ResultColumn column;
      if (PeekOperator("*")) {
        auto star = MakeExpr(ExprKind::kStar);
        Next();
        column.expr = std::move(star);
      } else if (PeekName() && PeekOperator(".", 1) && PeekOperator("*", 2)) {
        auto star = MakeExpr(ExprKind::kStar);
        star->qualifier = Next().text;
        Next();
        Next();
        column.expr = std::move(star);
      } else {
        column.expr = ParseExpr();
        column.alias = ParseOptionalAlias();
      }
      core.columns.push_back(std::move(column));
    } while (AcceptOperator(","));
    if (AcceptKeyword("FROM")) ParseFromClause(core.from);
    if (AcceptKeyword("WHERE")) core.where = ParseExpr();
    if (AcceptKeyword("GROUP")) {
      ExpectKeyword("BY");
      do {
        core.group_by.push_back(ParseExpr());
      } while (AcceptOperator(","));
    }
    if (AcceptKeyword("HAVING")) core.having = ParseExpr();
    if (AcceptKeyword("WINDOW")) {
      do {
        ExpectName();
        ExpectKeyword("AS");
        SkipParenthesized();
      } while (AcceptOperator(","));
    }
    return core;
  }

  // Returns the join operator text if one starts here, else empty.
  std::string AcceptJoinOperator() {
    if (AcceptOperator(",")) return ",";
    size_t save = pos_;
    std::string op;
    if (AcceptKeyword("NATURAL")) op += "NATURAL ";
    if (AcceptKeyword("LEFT")) op += "LEFT ";
    else if (AcceptKeyword("RIGHT")) op += "RIGHT ";
    else if (AcceptKeyword("FULL")) op += "FULL ";
    else if (AcceptKeyword("INNER")) op += "INNER ";
    else if (AcceptKeyword("CROSS")) op += "CROSS ";
    if (AcceptKeyword("OUTER")) op += "OUTER ";
    if (AcceptKeyword("JOIN")) return op + "JOIN";
    pos_ = save;
    return "";
  }

  void ParseFromClause(std::vector<FromItem>& items) {
    ParseFromItem(items, "");
    while (true) {
      std::string op = AcceptJoinOperator();
      if (op.empty()) break;
      ParseFromItem(items, op);
    }
  }

  void ParseFromItem(std::vector<FromItem>& items, const std::string& join_op) {
    if (AcceptOperator("(")) {
      if (PeekKeyword("SELECT") || PeekKeyword("WITH") || PeekKeyword("VALUES")) {
        FromItem item;
        item.kind = FromKind::kSubquery;
        item.join_operator = join_op;
        item.subquery = std::make_unique<Query>(ParseQuery());
        ExpectOperator(")");
        item.alias = ParseOptionalAlias();
        items.push_back(std::move(item));
        ParseJoinConstraint(items.back());
        return;
      }
      // Parenthesized join group: flattened into the enclosing list.
      size_t first = items.size();
      ParseFromClause(items);
      ExpectOperator(")");
      if (first < items.size()) items[first].join_operator = join_op;
      ParseJoinConstraint(items.back());
      return;
    }
    FromItem item;
    item.join_operator = join_op;
    item.name = ExpectObjectName();
    if (AcceptOperator(".")) {
      item.schema = item.name;
      item.name = ExpectObjectName();
    }
    if (AcceptOperator("(")) {
      item.kind = FromKind::kTableFunction;
      if (!PeekOperator(")")) {
        do {
          item.function_args.push_back(ParseExpr());
        } while (AcceptOperator(","));
      }
      ExpectOperator(")");
    }
    item.alias = ParseOptionalAlias();
    if (AcceptKeyword("INDEXED")) {
      ExpectKeyword("BY");
      ExpectName();
    } else if (PeekKeyword("NOT") && PeekKeyword("INDEXED", 1)) {
      Next();
      Next();
    }
    items.push_back(std::move(item));
    ParseJoinConstraint(items.back());
  }

  void ParseJoinConstraint(FromItem& item) {
    if (AcceptKeyword("ON")) {
      item.on = ParseExpr();
    } else if (AcceptKeyword("USING")) {
      ExpectOperator("(");
      do {
        item.using_columns.push_back(ExpectName());
      } while (AcceptOperator(","));
      ExpectOperator(")");
    }
  }

  void SkipParenthesized() {
    ExpectOperator("(");
    int depth = 1;
    while (depth > 0) {
      if (Peek().kind == TokenKind::kEnd) Fail("unbalanced parentheses");
      const Token& t = Next();
      if (t.kind == TokenKind::kOperator) {
        if (t.text == "(") ++depth;
        else if (t.text == ")") --depth;
      }
    }
  }

  ExprPtr MakeExpr(ExprKind kind) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->position = Peek().position;
    return e;
  }

  ExprPtr MakeBinary(std::string op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kBinary;
    e->op = std::move(op);
    e->position = lhs->position;
    e->args.push_back(std::move(lhs));
    e->args.push_back(std::move(rhs));
    return e;
  }

  ExprPtr ParseExpr() { return ParseOr(); }

  ExprPtr ParseOr() {
    ExprPtr lhs = ParseAnd();
    while (AcceptKeyword("OR")) lhs = MakeBinary("OR", std::move(lhs), ParseAnd());
    return lhs;
  }

  ExprPtr ParseAnd() {
    ExprPtr lhs = ParseNot();
    while (AcceptKeyword("AND")) lhs = MakeBinary("AND", std::move(lhs), ParseNot());
    return lhs;
  }

  ExprPtr ParseNot() {
    if (PeekKeyword("NOT") && !PeekKeyword("EXISTS", 1)) {
      auto e = MakeExpr(ExprKind::kUnary);
      Next();
      e->op = "NOT";
      e->args.push_back(ParseNot());
      return e;
    }
    return ParseEquality();
  }

  ExprPtr ParseEquality() {
    ExprPtr lhs = ParseRelational();
    while (true) {
      if (PeekOperator("=") || PeekOperator("==") || PeekOperator("!=") ||
          PeekOperator("<>")) {
        std::string op = Next().text;
        lhs = MakeBinary(op, std::move(lhs), ParseRelational());
        continue;
      }
      if (AcceptKeyword("IS")) {
        std::string op = "IS";
        if (AcceptKeyword("NOT")) op = "IS NOT";
        if (AcceptKeyword("DISTINCT")) {
          ExpectKeyword("FROM");
          op += " DISTINCT FROM";
        }
        lhs = MakeBinary(op, std::move(lhs), ParseRelational());
        continue;
      }
      if (PeekKeyword("ISNULL") || PeekKeyword("NOTNULL")) {
        auto e = MakeExpr(ExprKind::kUnary);
        e->op = Upper(Next().text);
        e->args.push_back(std::move(lhs));
        lhs = std::move(e);
        continue;
      }
      if (PeekKeyword("NOT") && PeekKeyword("NULL", 1)) {
        Next();
        Next();
        auto e = MakeExpr(ExprKind::kUnary);
        e->op = "NOTNULL";
        e->args.push_back(std::move(lhs));
        lhs = std::move(e);
        continue;
      }
      bool negated = false;
      size_t save = pos_;
      if (AcceptKeyword("NOT")) negated = true;
      if (AcceptKeyword("IN")) {
        lhs = ParseInTail(std::move(lhs), negated);
        continue;
      }
      if (PeekKeyword("LIKE") || PeekKeyword("GLOB") || PeekKeyword("REGEXP") ||
          PeekKeyword("MATCH")) {
        std::string op = Upper(Next().text);
        if (negated) op = "NOT " + op;
        ExprPtr e = MakeBinary(op, std::move(lhs), ParseRelational());
        if (AcceptKeyword("ESCAPE")) e->args.push_back(ParseRelational());
        lhs = std::move(e);
        continue;
      }
      if (AcceptKeyword("BETWEEN")) {
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::kBetween;
        e->negated = negated;
        e->position = lhs->position;
        e->args.push_back(std::move(lhs));
        e->args.push_back(ParseRelational());
        ExpectKeyword("AND");
        e->args.push_back(ParseRelational());
        lhs = std::move(e);
        continue;
      }
      pos_ = save;
      return lhs;
    }
  }

  ExprPtr ParseInTail(ExprPtr lhs, bool negated) {
    auto e = std::make_unique<Expr>();
    e->negated = negated;
    e->position = lhs->position;
    e->args.push_back(std::move(lhs));
    if (AcceptOperator("(")) {
      if (PeekKeyword("SELECT") || PeekKeyword("WITH") || PeekKeyword("VALUES")) {
        e->kind = ExprKind::kInSubquery;
        e->subquery = std::make_unique<Query>(ParseQuery());
      } else {
        e->kind = ExprKind::kInList;
        if (!PeekOperator(")")) {
          do {
            e->args.push_back(ParseExpr());
          } while (AcceptOperator(","));
        }
      }
      ExpectOperator(")");
      return e;
    }
    // IN table-name
    e->kind = ExprKind::kInList;
    auto col = MakeExpr(ExprKind::kColumn);
    col->name = ExpectObjectName();
    e->args.push_back(std::move(col));
    return e;
  }

  ExprPtr ParseRelational() {
    ExprPtr lhs = ParseBitwise();
    while (PeekOperator("<") || PeekOperator("<=") || PeekOperator(">") ||
           PeekOperator(">=")) {
      std::string op = Next().text;
      lhs = MakeBinary(op, std::move(lhs), ParseBitwise());
    }
    return lhs;
  }

  ExprPtr ParseBitwise() {
    ExprPtr lhs = ParseAdditive();
    while (PeekOperator("&") || PeekOperator("|") || PeekOperator("<<") ||
           PeekOperator(">>")) {
      std::string op = Next().text;
      lhs = MakeBinary(op, std::move(lhs), ParseAdditive());
    }
    return lhs;
  }

  ExprPtr ParseAdditive() {
    ExprPtr lhs = ParseMultiplicative();
    while (PeekOperator("+") || PeekOperator("-")) {
      std::string op = Next().text;
      lhs = MakeBinary(op, std::move(lhs), ParseMultiplicative());
    }
    return lhs;
  }

  ExprPtr ParseMultiplicative() {
    ExprPtr lhs = ParseConcat();
    while (PeekOperator("*") || PeekOperator("/") || PeekOperator("%")) {
      std::string op = Next().text;
      lhs = MakeBinary(op, std::move(lhs), ParseConcat());
    }
    return lhs;
  }

  ExprPtr ParseConcat() {
    ExprPtr lhs = ParseUnary();
    while (PeekOperator("||") || PeekOperator("->") || PeekOperator("->>")) {
      std::string op = Next().text;
      lhs = MakeBinary(op, std::move(lhs), ParseUnary());
    }
    return lhs;
  }

  ExprPtr ParseUnary() {
    if (PeekOperator("-") || PeekOperator("+") || PeekOperator("~")) {
      auto e = MakeExpr(ExprKind::kUnary);
      e->op = Next().text;
      e->args.push_back(ParseUnary());
      return e;
    }
    ExprPtr e = ParsePrimary();
    while (AcceptKeyword("COLLATE")) ExpectName();
    return e;
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString:
      case TokenKind::kBlob:
      case TokenKind::kParameter: {
        auto e = MakeExpr(ExprKind::kLiteral);
        e->text = Next().text;
        return e;
      }
      case TokenKind::kOperator:
        if (t.text == "(") return ParseParenthesized();
        Fail("expected expression");
      case TokenKind::kEnd:
        Fail("expected expression");
      case TokenKind::kQuotedIdentifier:
      case TokenKind::kIdentifier:
        break;
    }
    if (t.kind == TokenKind::kIdentifier) {
      const std::string upper = Upper(t.text);
      if (upper == "NULL" || upper == "CURRENT_DATE" || upper == "CURRENT_TIME" ||
          upper == "CURRENT_TIMESTAMP") {
        auto e = MakeExpr(ExprKind::kLiteral);
        e->text = Next().text;
        return e;
      }
      if (upper == "CASE") return ParseCase();
      if (upper == "CAST") return ParseCast();
      if (upper == "EXISTS" || (upper == "NOT" && PeekKeyword("EXISTS", 1))) {
        auto e = MakeExpr(ExprKind::kExists);
        if (upper == "NOT") {
          e->negated = true;
          Next();
        }
        Next();
        ExpectOperator("(");
        e->subquery = std::make_unique<Query>(ParseQuery());
        ExpectOperator(")");
        return e;
      }
      if (IsReserved(t) && !(PeekObjectName() && PeekOperator(".", 1))) {
        Fail("expected expression");
      }
    }
    // Function call: name '('
    if (t.kind == TokenKind::kIdentifier && PeekOperator("(", 1)) {
      return ParseFunction();
    }
    auto e = MakeExpr(ExprKind::kColumn);
    const Token& first = Next();
    std::string a = first.text;
    bool quoted = first.kind == TokenKind::kQuotedIdentifier && first.quote == '"';
    if (AcceptOperator(".")) {
      if (AcceptOperator("*")) {
        e->kind = ExprKind::kStar;
        e->qualifier = a;
        return e;
      }
      const Token& second = Peek();
      std::string b = ExpectObjectName();
      if (AcceptOperator(".")) {
        // schema.table.column
        e->qualifier = b;
        e->name = ExpectObjectName();
        return e;
      }
      e->qualifier = a;
      e->name = b;
      e->double_quoted = second.kind == TokenKind::kQuotedIdentifier &&
                         second.quote == '"';
      return e;
    }
    e->name = a;
    e->double_quoted = quoted;
    return e;
  }

  ExprPtr ParseParenthesized() {
    auto e = MakeExpr(ExprKind::kScalarSubquery);
    ExpectOperator("(");
    if (PeekKeyword("SELECT") || PeekKeyword("WITH") || PeekKeyword("VALUES")) {
      e->subquery = std::make_unique<Query>(ParseQuery());
      ExpectOperator(")");
      return e;
    }
    ExprPtr first = ParseExpr();
    if (AcceptOperator(")")) return first;
    e->kind = ExprKind::kRow;
    e->args.push_back(std::move(first));
    while (AcceptOperator(",")) e->args.push_back(ParseExpr());
    ExpectOperator(")");
    return e;
  }

  ExprPtr ParseFunction() {
    auto e = MakeExpr(ExprKind::kFunction);
    e->op = ToLower(Next().text);
    ExpectOperator("(");
    if (AcceptOperator("*")) {
      e->star_argument = true;
    } else if (!PeekOperator(")")) {
      if (AcceptKeyword("DISTINCT")) e->distinct = true;
      else AcceptKeyword("ALL");
      do {
        e->args.push_back(ParseExpr());
      } while (AcceptOperator(","));
      if (AcceptKeyword("ORDER")) {
        ExpectKeyword("BY");
        for (auto& term : ParseOrderingTerms())
          e->window_args.push_back(std::move(term.expr));
      }
    }
    ExpectOperator(")");
    if (AcceptKeyword("FILTER")) {
      ExpectOperator("(");
      ExpectKeyword("WHERE");
      e->window_args.push_back(ParseExpr());
      ExpectOperator(")");
    }
    if (AcceptKeyword("OVER")) {
      if (AcceptOperator("(")) {
        if (PeekName() && !PeekKeyword("PARTITION") && !PeekKeyword("ORDER") &&
            !PeekKeyword("RANGE") && !PeekKeyword("ROWS") &&
            !PeekKeyword("GROUPS")) {
          Next();  // base window name
        }
        if (AcceptKeyword("PARTITION")) {
          ExpectKeyword("BY");
          do {
            e->window_args.push_back(ParseExpr());
          } while (AcceptOperator(","));
        }
        if (AcceptKeyword("ORDER")) {
          ExpectKeyword("BY");
          for (auto& term : ParseOrderingTerms())
            e->window_args.push_back(std::move(term.expr));
        }
        // Frame specification carries no entity references.
        int depth = 1;
        while (true) {
          if (Peek().kind == TokenKind::kEnd) Fail("unterminated OVER clause");
          const Token& tok = Next();
          if (tok.kind != TokenKind::kOperator) continue;
          if (tok.text == "(") ++depth;
          if (tok.text == ")" && --depth == 0) break;
        }
      } else {
        ExpectName();
      }
    }
    return e;
  }

  ExprPtr ParseCase() {
    auto e = MakeExpr(ExprKind::kCase);
    ExpectKeyword("CASE");
    if (!PeekKeyword("WHEN")) {
      e->has_case_operand = true;
      e->args.push_back(ParseExpr());
    }
    if (!PeekKeyword("WHEN")) Fail("expected WHEN");
    while (AcceptKeyword("WHEN")) {
      e->args.push_back(ParseExpr());
      ExpectKeyword("THEN");
      e->args.push_back(ParseExpr());
    }
    if (AcceptKeyword("ELSE")) {
      e->has_else = true;
      e->args.push_back(ParseExpr());
    }
    ExpectKeyword("END");
    return e;
  }

  ExprPtr ParseCast() {
    auto e = MakeExpr(ExprKind::kCast);
    ExpectKeyword("CAST");
    ExpectOperator("(");
    e->args.push_back(ParseExpr());
    ExpectKeyword("AS");
    std::string type;
    while (!PeekOperator(")")) {
      if (Peek().kind == TokenKind::kEnd) Fail("unterminated CAST");
      const Token& tok = Next();
      if (!type.empty() && tok.kind != TokenKind::kOperator) type += " ";
      type += tok.text;
    }
    ExpectOperator(")");
    e->text = type;
    return e;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

Query Parse(std::string_view sql) {
  Parser parser(Tokenize(sql));
  return parser.ParseStatement();
}

}  // namespace sqlbench::sql
