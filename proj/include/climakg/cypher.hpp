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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "climakg/cypher_ast.hpp"
#include "climakg/error.hpp"

namespace climakg::cypher {

enum class TokenKind { Keyword, Identifier, StringLiteral, IntLiteral, FloatLiteral, Punctuation, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;   // raw source slice, quotes and escapes included
  std::string value;  // decoded string literal; upper-cased keyword; otherwise == text
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Raised by tokenize and parse. `offset` is a byte offset into the query
/// text, pointing at the first token that cannot extend a valid parse.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string found, std::string expected, bool unsupported = false);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& found() const noexcept { return found_; }
  const std::string& expected() const noexcept { return expected_; }
  /// The input uses a Cypher feature outside the supported subset.
  bool unsupported() const noexcept { return unsupported_; }

 private:
  std::size_t offset_;
  std::string found_;
  std::string expected_;
  bool unsupported_;
};

/// Keywords MATCH WHERE RETURN AND OR CONTAINS IN AS TRUE FALSE are matched
/// case-insensitively. String literals take single or double quotes with
/// backslash escapes. Whitespace is skipped; each token records the source
/// span it came from.
std::vector<Token> tokenize(std::string_view text);

QueryAst parse(std::string_view text);

/// Canonical text: upper-case keywords, double-quoted strings, one clause
/// per line (WHERE gets its own line). parse(pretty_print(a)) == a.
std::string pretty_print(const QueryAst& ast);
std::string print_expr(const Expr& e);
std::string print_literal(const PropertyValue& v);
std::string quote_string(std::string_view s);

/// Renders `message` with a caret under `offset` on the offending line.
std::string annotate_error(std::string_view text, const ParseError& e);

}  // namespace climakg::cypher
