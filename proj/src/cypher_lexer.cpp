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
#include <cctype>

#include "climakg/cypher.hpp"

namespace climakg::cypher {

ParseError::ParseError(std::size_t offset, std::string found, std::string expected, bool unsupported)
    : Error("parse error at offset " + std::to_string(offset) + ": found " +
            (found.empty() ? std::string("end of input") : "'" + found + "'") + ", expected " + expected),
      offset_(offset),
      found_(std::move(found)),
      expected_(std::move(expected)),
      unsupported_(unsupported) {}

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {"MATCH", "WHERE", "RETURN", "AND",  "OR",
                                                        "CONTAINS", "IN", "AS", "TRUE", "FALSE"};

std::string upper(std::string_view s) {
  std::string u(s);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](TokenKind k, std::size_t start, std::string value) {
    Token t;
    t.kind = k;
    t.offset = start;
    t.length = i - start;
    t.text = std::string(text.substr(start, i - start));
    t.value = std::move(value);
    out.push_back(std::move(t));
  };

  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;

    if (ident_start(c)) {
      while (i < n && ident_char(text[i])) ++i;
      std::string_view word = text.substr(start, i - start);
      std::string up = upper(word);
      if (std::find(kKeywords.begin(), kKeywords.end(), up) != kKeywords.end()) {
        push(TokenKind::Keyword, start, up);
      } else {
        push(TokenKind::Identifier, start, std::string(word));
      }
      continue;
    }

    if (digit(c)) {
      bool is_float = false;
      while (i < n && digit(text[i])) ++i;
      if (i + 1 < n && text[i] == '.' && digit(text[i + 1])) {
        is_float = true;
        ++i;
        while (i < n && digit(text[i])) ++i;
      }
      if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < n && digit(text[j])) {
          is_float = true;
          i = j;
          while (i < n && digit(text[i])) ++i;
        }
      }
      if (i < n && ident_char(text[i])) {
        throw ParseError(start, std::string(text.substr(start, i - start + 1)), "a number");
      }
      push(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, start,
           std::string(text.substr(start, i - start)));
      continue;
    }

    if (c == '\'' || c == '"') {
      const char quote = c;
      std::string value;
      ++i;
      bool closed = false;
      while (i < n) {
        char d = text[i];
        if (d == quote) {
          ++i;
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i + 1 >= n) break;
          char e = text[i + 1];
          switch (e) {
            case '\\': value += '\\'; break;
            case '\'': value += '\''; break;
            case '"': value += '"'; break;
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case 'r': value += '\r'; break;
            default:
              throw ParseError(i, std::string(text.substr(i, 2)), "a valid escape sequence");
          }
          i += 2;
          continue;
        }
        value += d;
        ++i;
      }
      if (!closed) {
        throw ParseError(start, std::string(text.substr(start, std::min<std::size_t>(n - start, 16))),
                         "a terminated string literal");
      }
      push(TokenKind::StringLiteral, start, std::move(value));
      continue;
    }

    if (c == '-' && i + 1 < n && text[i + 1] == '>') {
      i += 2;
      push(TokenKind::Punctuation, start, "->");
      continue;
    }
    if (c == '<' && i + 1 < n && text[i + 1] == '-') {
      i += 2;
      push(TokenKind::Punctuation, start, "<-");
      continue;
    }
    static constexpr std::string_view kPunct = "()[]{}:,.|-=<>*;";
    if (kPunct.find(c) != std::string_view::npos) {
      ++i;
      push(TokenKind::Punctuation, start, std::string(1, c));
      continue;
    }
    throw ParseError(start, std::string(1, c), "a token (illegal character)");
  }
  return out;
}

std::string annotate_error(std::string_view text, const ParseError& e) {
  std::size_t off = std::min(e.offset(), text.size());
  std::size_t line_start = 0;
  if (off > 0) {
    std::size_t nl = text.rfind('\n', off - 1);
    line_start = nl == std::string_view::npos ? 0 : nl + 1;
  }
  std::size_t line_end = text.find('\n', off);
  if (line_end == std::string_view::npos) line_end = text.size();
  std::size_t line_no = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(line_start), '\n')) + 1;
  std::string out = e.what();
  out += "\n";
  out += "  " + std::to_string(line_no) + " | " + std::string(text.substr(line_start, line_end - line_start)) + "\n";
  out += std::string(std::to_string(line_no).size() + 5 + (off - line_start), ' ') + "^\n";
  return out;
}

}  // namespace climakg::cypher
