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

#include <sstream>

#include "climakg/cypher.hpp"

namespace climakg::cypher {
namespace {

void print_props(std::ostream& out, const PropMap& props) {
  out << '{';
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i) out << ", ";
    out << props[i].key << ": " << print_literal(props[i].value);
  }
  out << '}';
}

void print_node(std::ostream& out, const NodePattern& n) {
  out << '(';
  if (n.variable) out << *n.variable;
  for (std::size_t i = 0; i < n.labels.size(); ++i) out << (i ? "|" : ":") << n.labels[i];
  if (!n.properties.empty()) {
    if (n.variable || !n.labels.empty()) out << ' ';
    print_props(out, n.properties);
  }
  out << ')';
}

void print_rel(std::ostream& out, const RelPattern& r) {
  out << (r.direction == RelDirection::RightToLeft ? "<-[" : "-[");
  if (r.variable) out << *r.variable;
  out << ':' << r.rel_type;
  if (!r.properties.empty()) {
    out << ' ';
    print_props(out, r.properties);
  }
  out << (r.direction == RelDirection::LeftToRight ? "]->" : "]-");
}

std::string print_operand(const Operand& o) {
  if (const auto* pa = std::get_if<PropertyAccess>(&o)) return pa->variable + "." + pa->key;
  return print_literal(std::get<Literal>(o).value);
}

}  // namespace

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string print_literal(const PropertyValue& v) {
  switch (v.kind()) {
    case PropertyValue::Kind::Text: return quote_string(v.as_text());
    case PropertyValue::Kind::Int: return std::to_string(v.as_int());
    case PropertyValue::Kind::Real: return format_real(v.as_real());
    case PropertyValue::Kind::Bool: return v.as_bool() ? "TRUE" : "FALSE";
    case PropertyValue::Kind::TextList: {
      std::string out = "[";
      const auto& items = v.as_text_list();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += quote_string(items[i]);
      }
      return out + "]";
    }
  }
  return {};
}

std::string print_expr(const Expr& e) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OrExpr> || std::is_same_v<T, AndExpr>) {
          const char* sep = std::is_same_v<T, OrExpr> ? " OR " : " AND ";
          std::string out;
          for (std::size_t i = 0; i < node.operands.size(); ++i) {
            if (i) out += sep;
            out += print_expr(node.operands[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, CompareExpr>) {
          const char* op = node.op == CompareOp::Contains ? " CONTAINS " : node.op == CompareOp::In ? " IN " : " = ";
          return print_operand(node.lhs) + op + print_operand(node.rhs);
        } else {
          return "(" + print_expr(*node.inner) + ")";
        }
      },
      e.node);
}

std::string pretty_print(const QueryAst& ast) {
  std::ostringstream out;
  for (const auto& clause : ast.clauses) {
    out << "MATCH ";
    for (std::size_t i = 0; i < clause.patterns.size(); ++i) {
      if (i) out << ", ";
      const auto& p = clause.patterns[i];
      print_node(out, p.start);
      for (const auto& step : p.steps) {
        print_rel(out, step.rel);
        print_node(out, step.node);
      }
    }
    out << '\n';
    if (clause.where) out << "WHERE " << print_expr(*clause.where) << '\n';
  }
  out << "RETURN ";
  const auto& items = ast.return_clause.items;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ", ";
    if (const auto* pa = std::get_if<PropertyAccess>(&items[i].expr)) {
      out << pa->variable << '.' << pa->key;
    } else {
      out << std::get<VariableRef>(items[i].expr).name;
    }
    if (items[i].alias) out << " AS " << *items[i].alias;
  }
  return out.str();
}

}  // namespace climakg::cypher
