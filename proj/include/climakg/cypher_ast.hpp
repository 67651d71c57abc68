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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "climakg/value.hpp"

namespace climakg::cypher {

/// Owning pointer with value semantics, for the recursive Expr tree.
template <typename T>
class Box {
 public:
  Box(T v) : p_(std::make_unique<T>(std::move(v))) {}
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) p_ = std::make_unique<T>(*o.p_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *p_; }
  const T& operator*() const { return *p_; }
  T* operator->() { return p_.get(); }
  const T* operator->() const { return p_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.p_ == *b.p_; }

 private:
  std::unique_ptr<T> p_;
};

struct PropertyEntry {
  std::string key;
  PropertyValue value;
  friend bool operator==(const PropertyEntry&, const PropertyEntry&) = default;
};

/// Inline `{k: v, ...}` constraints, in source order.
using PropMap = std::vector<PropertyEntry>;

struct NodePattern {
  std::optional<std::string> variable;
  std::vector<std::string> labels;  // disjunction: `:A|B`
  PropMap properties;
  friend bool operator==(const NodePattern&, const NodePattern&) = default;
};

enum class RelDirection { LeftToRight, RightToLeft, Undirected };

struct RelPattern {
  std::optional<std::string> variable;
  std::string rel_type;
  PropMap properties;
  RelDirection direction = RelDirection::LeftToRight;
  friend bool operator==(const RelPattern&, const RelPattern&) = default;
};

struct PatternStep {
  RelPattern rel;
  NodePattern node;
  friend bool operator==(const PatternStep&, const PatternStep&) = default;
};

struct PathPattern {
  NodePattern start;
  std::vector<PatternStep> steps;
  friend bool operator==(const PathPattern&, const PathPattern&) = default;
};

struct PropertyAccess {
  std::string variable;
  std::string key;
  friend bool operator==(const PropertyAccess&, const PropertyAccess&) = default;
};

/// List literals are TextList values.
struct Literal {
  PropertyValue value;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Operand = std::variant<PropertyAccess, Literal>;

enum class CompareOp { Contains, In, Eq };

struct Expr;

struct OrExpr {
  std::vector<Expr> operands;  // >= 2, none of them OrExpr
  friend bool operator==(const OrExpr&, const OrExpr&) = default;
};

struct AndExpr {
  std::vector<Expr> operands;  // >= 2, each CompareExpr or ParenExpr
  friend bool operator==(const AndExpr&, const AndExpr&) = default;
};

struct CompareExpr {
  Operand lhs;
  CompareOp op = CompareOp::Eq;
  Operand rhs;
  friend bool operator==(const CompareExpr&, const CompareExpr&) = default;
};

struct ParenExpr {
  Box<Expr> inner;
  friend bool operator==(const ParenExpr&, const ParenExpr&) = default;
};

struct Expr {
  std::variant<OrExpr, AndExpr, CompareExpr, ParenExpr> node;
  friend bool operator==(const Expr&, const Expr&) = default;
};

struct MatchClause {
  std::vector<PathPattern> patterns;
  std::optional<Expr> where;
  friend bool operator==(const MatchClause&, const MatchClause&) = default;
};

struct VariableRef {
  std::string name;
  friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

struct ReturnItem {
  std::variant<PropertyAccess, VariableRef> expr;
  std::optional<std::string> alias;
  friend bool operator==(const ReturnItem&, const ReturnItem&) = default;
};

struct ReturnClause {
  std::vector<ReturnItem> items;
  friend bool operator==(const ReturnClause&, const ReturnClause&) = default;
};

struct QueryAst {
  std::vector<MatchClause> clauses;
  ReturnClause return_clause;
  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

}  // namespace climakg::cypher
