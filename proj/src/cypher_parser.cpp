// Copyright 2026 The climakg Authors
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
#include <array>
#include <charconv>
#include <cstdlib>

#include "climakg/cypher.hpp"

namespace climakg::cypher {
namespace {

// Words that belong to full openCypher but not to the supported subset. They
// lex as identifiers; the parser turns them into an "unsupported" error when
// they show up where a clause, operator or modifier would start.
constexpr std::array<std::string_view, 22> kUnsupportedWords = {
    "OPTIONAL", "WITH",   "ORDER",  "BY",    "NOT",    "CREATE", "MERGE", "DELETE",
    "DETACH",   "SET",    "REMOVE", "UNWIND", "LIMIT", "SKIP",   "DISTINCT", "UNION",
    "CALL",     "DROP",   "XOR",    "STARTS", "ENDS",  "EXISTS"};

bool is_unsupported_word(const Token& t) {
  if (t.kind != TokenKind::Identifier) return false;
  std::string up = t.text;
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return std::find(kUnsupportedWords.begin(), kUnsupportedWords.end(), up) != kUnsupportedWords.end();
}

class Parser {
 public:
  Parser(std::string_view text) : text_(text), toks_(tokenize(text)) {}

  QueryAst run() {
    QueryAst q;
    if (!peek_keyword("MATCH")) fail_clause("MATCH");
    while (peek_keyword("MATCH")) q.clauses.push_back(match_clause());
    if (!peek_keyword("RETURN")) fail_clause("MATCH, WHERE or RETURN");
    q.return_clause = return_clause();
    if (!at_end()) fail_clause("end of input");
    return q;
  }

 private:
  // ---- token helpers ----
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* cur() const { return at_end() ? nullptr : &toks_[pos_]; }

  bool peek_keyword(std::string_view kw) const {
    const Token* t = cur();
    return t && t->kind == TokenKind::Keyword && t->value == kw;
  }
  bool peek_punct(std::string_view p, std::size_t ahead = 0) const {
    if (pos_ + ahead >= toks_.size()) return false;
    const Token& t = toks_[pos_ + ahead];
    return t.kind == TokenKind::Punctuation && t.value == p;
  }
  bool peek_ident() const { return cur() && cur()->kind == TokenKind::Identifier; }

  [[noreturn]] void fail(const std::string& expected, bool unsupported = false) const {
    if (at_end()) throw ParseError(text_.size(), "", expected, unsupported);
    const Token& t = toks_[pos_];
    throw ParseError(t.offset, t.text, expected, unsupported);
  }

  // Error at a clause boundary; flags known-but-unsupported Cypher words.
  [[noreturn]] void fail_clause(const std::string& expected) const {
    if (const Token* t = cur(); t && is_unsupported_word(*t)) {
      fail("a supported clause (unsupported feature: " + t->text + ")", true);
    }
    fail(expected);
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) fail(std::string(kw));
    ++pos_;
  }
  void expect_punct(std::string_view p) {
    if (!peek_punct(p)) fail("'" + std::string(p) + "'");
    ++pos_;
  }
  std::string expect_ident(const std::string& what) {
    if (!peek_ident()) fail(what);
    return toks_[pos_++].text;
  }

  // ---- clauses ----
  MatchClause match_clause() {
    expect_keyword("MATCH");
    MatchClause m;
    m.patterns.push_back(path_pattern());
    while (peek_punct(",")) {
      ++pos_;
      m.patterns.push_back(path_pattern());
    }
    if (peek_keyword("WHERE")) {
      ++pos_;
      m.where = expr();
    }
    return m;
  }

  PathPattern path_pattern() {
    PathPattern p;
    p.start = node_pattern();
    while (peek_punct("-") || peek_punct("<-")) {
      PatternStep step;
      step.rel = rel_pattern();
      step.node = node_pattern();
      p.steps.push_back(std::move(step));
    }
    return p;
  }

  NodePattern node_pattern() {
    expect_punct("(");
    NodePattern n;
    if (peek_ident()) n.variable = toks_[pos_++].text;
    if (peek_punct(":")) {
      ++pos_;
      n.labels.push_back(expect_ident("a label"));
      while (peek_punct("|")) {
        ++pos_;
        n.labels.push_back(expect_ident("a label"));
      }
    }
    if (peek_punct("{")) n.properties = prop_map();
    if (!peek_punct(")")) fail(n.properties.empty() ? "':', '{' or ')'" : "')'");
    ++pos_;
    return n;
  }

  RelPattern rel_pattern() {
    RelPattern r;
    bool left_arrow = false;
    if (peek_punct("<-")) {
      left_arrow = true;
      ++pos_;
    } else {
      expect_punct("-");
    }
    if (!peek_punct("[")) fail("'[' (anonymous relationship shorthand is not supported)", !at_end());
    ++pos_;
    if (peek_ident()) r.variable = toks_[pos_++].text;
    if (peek_punct("*")) fail("':' (unsupported feature: variable-length paths)", true);
    expect_punct(":");
    r.rel_type = expect_ident("a relationship type");
    if (peek_punct("|")) fail("']' (unsupported feature: relationship type disjunction)", true);
    if (peek_punct("*")) fail("']' (unsupported feature: variable-length paths)", true);
    if (peek_punct("{")) r.properties = prop_map();
    expect_punct("]");
    if (left_arrow) {
      expect_punct("-");
      r.direction = RelDirection::RightToLeft;
    } else if (peek_punct("->")) {
      ++pos_;
      r.direction = RelDirection::LeftToRight;
    } else if (peek_punct("-")) {
      ++pos_;
      r.direction = RelDirection::Undirected;
    } else {
      fail("'->' or '-'");
    }
    return r;
  }

  PropMap prop_map() {
    expect_punct("{");
    PropMap m;
    do {
      if (!m.empty()) ++pos_;  // the comma
      PropertyEntry e;
      e.key = expect_ident("a property key");
      expect_punct(":");
      e.value = scalar_literal();
      m.push_back(std::move(e));
    } while (peek_punct(","));
    expect_punct("}");
    return m;
  }

  // ---- literals ----
  bool peek_literal_start() const {
    const Token* t = cur();
    if (!t) return false;
    switch (t->kind) {
      case TokenKind::StringLiteral:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral: return true;
      case TokenKind::Keyword: return t->value == "TRUE" || t->value == "FALSE";
      case TokenKind::Punctuation: return t->value == "-" || t->value == "[";
      default: return false;
    }
  }

  PropertyValue scalar_literal() {
    const Token* t = cur();
    if (!t) fail("a literal");
    if (t->kind == TokenKind::StringLiteral) {
      ++pos_;
      return PropertyValue(t->value);
    }
    if (t->kind == TokenKind::Keyword && (t->value == "TRUE" || t->value == "FALSE")) {
      ++pos_;
      return PropertyValue(t->value == "TRUE");
    }
    bool negative = false;
    if (peek_punct("-")) {
      negative = true;
      ++pos_;
      t = cur();
      if (!t || (t->kind != TokenKind::IntLiteral && t->kind != TokenKind::FloatLiteral)) fail("a number");
    }
    if (t->kind == TokenKind::IntLiteral) {
      std::string digits = (negative ? "-" : "") + t->text;
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || p != digits.data() + digits.size()) fail("an integer within 64-bit range");
      ++pos_;
      return PropertyValue(v);
    }
    if (t->kind == TokenKind::FloatLiteral) {
      std::string digits = (negative ? "-" : "") + t->text;
      double v = std::strtod(digits.c_str(), nullptr);
      ++pos_;
      return PropertyValue(v);
    }
    fail("a literal");
  }

  PropertyValue list_literal() {
    expect_punct("[");
    TextList items;
    if (!peek_punct("]")) {
      do {
        if (!items.empty()) ++pos_;
        if (!cur() || cur()->kind != TokenKind::StringLiteral) fail("a string literal (lists hold text only)");
        items.push_back(toks_[pos_++].value);
      } while (peek_punct(","));
    }
    expect_punct("]");
    return PropertyValue(std::move(items));
  }

  // ---- expressions ----
  Expr expr() {
    Expr first = and_expr();
    if (!peek_keyword("OR")) return first;
    OrExpr o;
    o.operands.push_back(std::move(first));
    while (peek_keyword("OR")) {
      ++pos_;
      o.operands.push_back(and_expr());
    }
    return Expr{std::move(o)};
  }

  Expr and_expr() {
    Expr first = term();
    if (!peek_keyword("AND")) return first;
    AndExpr a;
    a.operands.push_back(std::move(first));
    while (peek_keyword("AND")) {
      ++pos_;
      a.operands.push_back(term());
    }
    return Expr{std::move(a)};
  }

  Expr term() {
    if (peek_punct("(")) {
      ++pos_;
      Expr inner = expr();
      expect_punct(")");
      return Expr{ParenExpr{std::move(inner)}};
    }
    if (const Token* t = cur(); t && is_unsupported_word(*t)) {
      fail("a comparison (unsupported feature: " + t->text + ")", true);
    }
    CompareExpr c;
    c.lhs = operand();
    if (peek_keyword("CONTAINS")) {
      c.op = CompareOp::Contains;
    } else if (peek_keyword("IN")) {
      c.op = CompareOp::In;
    } else if (peek_punct("=")) {
      c.op = CompareOp::Eq;
    } else if (const Token* t = cur(); t && (is_unsupported_word(*t) || peek_punct("<") || peek_punct(">"))) {
      fail("CONTAINS, IN or '=' (unsupported operator: " + t->text + ")", true);
    } else {
      fail("CONTAINS, IN or '='");
    }
    ++pos_;
    c.rhs = operand();
    return Expr{std::move(c)};
  }

  Operand operand() {
    if (peek_ident()) {
      if (peek_punct("(", 1)) fail("a property access or literal (unsupported feature: function calls)", true);
      PropertyAccess pa;
      pa.variable = toks_[pos_++].text;
      expect_punct(".");
      pa.key = expect_ident("a property key");
      return pa;
    }
    if (peek_punct("[")) return Literal{list_literal()};
    if (peek_literal_start()) return Literal{scalar_literal()};
    fail("a property access or literal");
  }

  // ---- return ----
  ReturnClause return_clause() {
    expect_keyword("RETURN");
    ReturnClause r;
    if (const Token* t = cur();
        t && is_unsupported_word(*t) && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == TokenKind::Identifier) {
      fail("a return item (unsupported feature: " + t->text + ")", true);
    }
    r.items.push_back(return_item());
    while (peek_punct(",")) {
      ++pos_;
      r.items.push_back(return_item());
    }
    return r;
  }

  ReturnItem return_item() {
    ReturnItem item;
    if (peek_punct("*")) fail("a return item (unsupported feature: RETURN *)", true);
    std::string var = expect_ident("a variable or property access");
    if (peek_punct("(")) {
      --pos_;
      fail("a variable or property access (unsupported feature: function calls)", true);
    }
    if (peek_punct(".")) {
      ++pos_;
      item.expr = PropertyAccess{var, expect_ident("a property key")};
    } else {
      item.expr = VariableRef{var};
    }
    if (peek_keyword("AS")) {
      ++pos_;
      item.alias = expect_ident("an alias");
    }
    return item;
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryAst parse(std::string_view text) { return Parser(text).run(); }

}  // namespace climakg::cypher
