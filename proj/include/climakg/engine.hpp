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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "climakg/cypher_ast.hpp"
#include "climakg/error.hpp"
#include "climakg/graph.hpp"

namespace climakg::engine {

class PlanError : public Error {
 public:
  enum class Code { UnboundVariable, VariableKindConflict, RepeatedRelationship };

  PlanError(Code code, std::string variable, const std::string& message)
      : Error(message), code_(code), variable_(std::move(variable)) {}
  Code code() const noexcept { return code_; }
  const std::string& variable() const noexcept { return variable_; }

 private:
  Code code_;
  std::string variable_;
};

enum class ElementKind { Node, Relationship };

struct ElementRef {
  ElementKind kind = ElementKind::Node;
  std::uint64_t id = 0;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

/// One output value: null, a property value, or a bound graph element.
using Cell = std::variant<std::monostate, PropertyValue, ElementRef>;

using Slot = std::size_t;

struct NodeScan {
  Slot slot = 0;
  std::vector<std::string> labels;  // any-of; empty means every node
  cypher::PropMap properties;
};

/// Re-applies label/property constraints to a node bound by an earlier step.
struct NodeCheck {
  Slot slot = 0;
  std::vector<std::string> labels;
  cypher::PropMap properties;
};

struct Expand {
  Slot from = 0;
  Slot rel = 0;
  bool rel_bound = false;  // join on a relationship bound in an earlier pattern
  std::string rel_type;
  cypher::RelDirection direction = cypher::RelDirection::LeftToRight;
  cypher::PropMap rel_properties;
  Slot to = 0;
  bool to_bound = false;  // join: the neighbour must equal the bound node
  std::vector<std::string> to_labels;
  cypher::PropMap to_properties;
  std::vector<Slot> distinct_from;  // earlier relationship slots of the same path pattern
};

struct Filter {
  cypher::Expr expr;
};

struct ProjectItem {
  std::string column;
  Slot slot = 0;
  std::optional<std::string> key;  // property access when set, bare variable otherwise
};

struct Project {
  std::vector<ProjectItem> items;
};

using PlanStep = std::variant<NodeScan, NodeCheck, Expand, Filter, Project>;

struct LogicalPlan {
  /// Slot names. Anonymous pattern elements get names that cannot be lexed
  /// as identifiers ("#0", "#1", ...).
  std::vector<std::string> variables;
  std::vector<ElementKind> kinds;
  std::unordered_map<std::string, Slot> slot_of;
  std::vector<PlanStep> steps;
};

/// One line per step, for diagnostics and tests.
std::vector<std::string> describe(const LogicalPlan& plan);

/// Clause-ordered plan: a scan at each first occurrence of a node variable,
/// joins at re-occurrences, each WHERE right after its MATCH.
LogicalPlan plan(const cypher::QueryAst& ast);

struct Subgraph {
  std::set<NodeId> nodes;
  std::set<RelId> rels;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

struct ExecStats {
  std::size_t nodes_touched = 0;
  std::size_t type_mismatches = 0;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Every element bound in each row, returned or not (parallel to rows).
  std::vector<std::vector<ElementRef>> bindings;
  /// Union of `bindings` over all rows.
  Subgraph subgraph;
  ExecStats stats;
};

/// Elements bound in the first `row_count` rows.
Subgraph subgraph_of(const ResultTable& table, std::size_t row_count);

struct ExecOptions {
  /// When false, scans never consult the property index.
  bool use_indexes = true;
};

ResultTable execute(const LogicalPlan& plan, const Graph& graph, const ExecOptions& options = {});

using Bindings = std::map<std::string, ElementRef>;

/// Two-valued predicate evaluation: a comparison touching a missing property
/// is false. CONTAINS/IN against non-text stored values are false and bump
/// `type_mismatches` when a counter is given.
bool evaluate_predicate(const cypher::Expr& expr, const Bindings& bindings, const Graph& graph,
                        std::size_t* type_mismatches = nullptr);

/// parse -> plan -> execute. Throws cypher::ParseError or PlanError.
ResultTable run_query(std::string_view text, const Graph& graph, const ExecOptions& options = {});

/// Column header for a return item: its alias, else the printed expression.
std::string column_name(const cypher::ReturnItem& item);

}  // namespace climakg::engine
