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

#include "climakg/engine.hpp"

#include <algorithm>
#include <limits>

#include "climakg/cypher.hpp"

namespace climakg::engine {

using namespace cypher;

namespace {

constexpr std::uint64_t kUnbound = std::numeric_limits<std::uint64_t>::max();

const PropertyValue* element_property(const Graph& g, ElementRef ref, const std::string& key) {
  return ref.kind == ElementKind::Node ? g.node(ref.id).property(key) : g.relationship(ref.id).property(key);
}

bool props_match(const PropertyMap& have, const PropMap& want) {
  for (const auto& e : want) {
    auto it = have.find(e.key);
    if (it == have.end() || !(it->second == e.value)) return false;
  }
  return true;
}

bool labels_match(const Node& n, const std::vector<std::string>& any_of) {
  if (any_of.empty()) return true;
  for (const auto& l : any_of)
    if (n.has_label(l)) return true;
  return false;
}

template <typename Resolve>
std::optional<PropertyValue> operand_value(const Operand& o, const Graph& g, Resolve& resolve) {
  if (const auto* lit = std::get_if<Literal>(&o)) return lit->value;
  const auto& pa = std::get<PropertyAccess>(o);
  const PropertyValue* v = element_property(g, resolve(pa.variable), pa.key);
  if (!v) return std::nullopt;
  return *v;
}

template <typename Resolve>
bool eval(const Expr& e, const Graph& g, Resolve& resolve, std::size_t* mismatches) {
  if (const auto* o = std::get_if<OrExpr>(&e.node)) {
    for (const auto& x : o->operands)
      if (eval(x, g, resolve, mismatches)) return true;
    return false;
  }
  if (const auto* a = std::get_if<AndExpr>(&e.node)) {
    for (const auto& x : a->operands)
      if (!eval(x, g, resolve, mismatches)) return false;
    return true;
  }
  if (const auto* p = std::get_if<ParenExpr>(&e.node)) return eval(*p->inner, g, resolve, mismatches);

  const auto& c = std::get<CompareExpr>(e.node);
  auto lhs = operand_value(c.lhs, g, resolve);
  auto rhs = operand_value(c.rhs, g, resolve);
  if (!lhs || !rhs) return false;
  switch (c.op) {
    case CompareOp::Eq: return *lhs == *rhs;
    case CompareOp::Contains:
      if (lhs->is_text() && rhs->is_text()) return lhs->as_text().find(rhs->as_text()) != std::string::npos;
      break;
    case CompareOp::In:
      if (lhs->is_text() && rhs->is_text_list()) {
        const auto& items = rhs->as_text_list();
        return std::find(items.begin(), items.end(), lhs->as_text()) != items.end();
      }
      break;
  }
  if (mismatches) ++*mismatches;
  return false;
}

std::string props_text(const PropMap& props) {
  std::string out = " {";
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i) out += ", ";
    out += props[i].key + ": " + print_literal(props[i].value);
  }
  return out + "}";
}

std::string labels_text(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "|" : ":") + labels[i];
  return out;
}

// ---- planning ----

class Planner {
 public:
  LogicalPlan run(const QueryAst& ast) {
    for (const auto& clause : ast.clauses) {
      for (const auto& pattern : clause.patterns) path(pattern);
      if (clause.where) {
        check_bound(*clause.where);
        plan_.steps.emplace_back(Filter{*clause.where});
      }
    }
    Project proj;
    for (const auto& item : ast.return_clause.items) {
      ProjectItem pi;
      pi.column = column_name(item);
      if (const auto* pa = std::get_if<PropertyAccess>(&item.expr)) {
        pi.slot = require(pa->variable);
        pi.key = pa->key;
      } else {
        pi.slot = require(std::get<VariableRef>(item.expr).name);
      }
      proj.items.push_back(std::move(pi));
    }
    plan_.steps.emplace_back(std::move(proj));
    return std::move(plan_);
  }

 private:
  Slot fresh(const std::optional<std::string>& name, ElementKind kind) {
    Slot s = plan_.variables.size();
    std::string n = name ? *name : "#" + std::to_string(anon_++);
    plan_.variables.push_back(n);
    plan_.kinds.push_back(kind);
    plan_.slot_of.emplace(n, s);
    return s;
  }

  std::optional<Slot> lookup(const std::optional<std::string>& name, ElementKind kind) const {
    if (!name) return std::nullopt;
    auto it = plan_.slot_of.find(*name);
    if (it == plan_.slot_of.end()) return std::nullopt;
    if (plan_.kinds[it->second] != kind) {
      throw PlanError(PlanError::Code::VariableKindConflict, *name,
                      "variable '" + *name + "' is used both as a node and as a relationship");
    }
    return it->second;
  }

  Slot require(const std::string& name) const {
    auto it = plan_.slot_of.find(name);
    if (it == plan_.slot_of.end()) {
      throw PlanError(PlanError::Code::UnboundVariable, name, "variable '" + name + "' is not defined");
    }
    return it->second;
  }

  void check_bound(const Expr& e) const {
    std::visit(
        [this](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, OrExpr> || std::is_same_v<T, AndExpr>) {
            for (const auto& x : n.operands) check_bound(x);
          } else if constexpr (std::is_same_v<T, ParenExpr>) {
            check_bound(*n.inner);
          } else {
            for (const Operand* o : {&n.lhs, &n.rhs})
              if (const auto* pa = std::get_if<PropertyAccess>(o)) require(pa->variable);
          }
        },
        e.node);
  }

  void path(const PathPattern& p) {
    Slot current;
    if (auto bound = lookup(p.start.variable, ElementKind::Node)) {
      current = *bound;
      if (!p.start.labels.empty() || !p.start.properties.empty())
        plan_.steps.emplace_back(NodeCheck{current, p.start.labels, p.start.properties});
    } else {
      current = fresh(p.start.variable, ElementKind::Node);
      plan_.steps.emplace_back(NodeScan{current, p.start.labels, p.start.properties});
    }

    std::vector<Slot> rels_in_pattern;
    for (const auto& step : p.steps) {
      Expand x;
      x.from = current;
      if (auto bound = lookup(step.rel.variable, ElementKind::Relationship)) {
        if (std::find(rels_in_pattern.begin(), rels_in_pattern.end(), *bound) != rels_in_pattern.end()) {
          throw PlanError(PlanError::Code::RepeatedRelationship, *step.rel.variable,
                          "relationship variable '" + *step.rel.variable + "' repeats within one path pattern");
        }
        x.rel = *bound;
        x.rel_bound = true;
      } else {
        x.rel = fresh(step.rel.variable, ElementKind::Relationship);
      }
      x.rel_type = step.rel.rel_type;
      x.direction = step.rel.direction;
      x.rel_properties = step.rel.properties;
      x.distinct_from = rels_in_pattern;
      rels_in_pattern.push_back(x.rel);

      x.to_labels = step.node.labels;
      x.to_properties = step.node.properties;
      if (auto bound = lookup(step.node.variable, ElementKind::Node)) {
        x.to = *bound;
        x.to_bound = true;
      } else {
        x.to = fresh(step.node.variable, ElementKind::Node);
      }
      current = x.to;
      plan_.steps.emplace_back(std::move(x));
    }
  }

  LogicalPlan plan_;
  std::size_t anon_ = 0;
};

// ---- execution ----

using Row = std::vector<std::uint64_t>;

class Executor {
 public:
  Executor(const LogicalPlan& p, const Graph& g, const ExecOptions& o) : plan_(p), g_(g), opts_(o) {}

  ResultTable run() {
    rows_.assign(1, Row(plan_.variables.size(), kUnbound));
    ResultTable out;
    for (const auto& step : plan_.steps) {
      std::visit([&](const auto& s) { apply(s, out); }, step);
    }
    return out;
  }

 private:
  void apply(const NodeScan& s, ResultTable&) {
    std::vector<NodeId> candidates = scan_candidates(s);
    std::vector<Row> next;
    for (const auto& row : rows_) {
      for (NodeId id : candidates) {
        Row r = row;
        r[s.slot] = id;
        next.push_back(std::move(r));
      }
    }
    rows_ = std::move(next);
  }

  std::vector<NodeId> scan_candidates(const NodeScan& s) {
    std::vector<NodeId> ids;
    if (s.labels.empty()) {
      for (const auto& n : g_.nodes()) {
        ++stats_.nodes_touched;
        if (props_match(n.properties, s.properties)) ids.push_back(n.id);
      }
      return ids;
    }
    const PropertyEntry* probe = nullptr;
    if (opts_.use_indexes) {
      for (const auto& e : s.properties) {
        if (e.value.is_text() && g_.is_indexed_key(e.key)) {
          probe = &e;
          break;
        }
      }
    }
    for (const auto& label : s.labels) {
      std::vector<NodeId> part =
          probe ? g_.nodes_by_label_property(label, probe->key, probe->value) : g_.nodes_by_label(label);
      for (NodeId id : part) {
        ++stats_.nodes_touched;
        if (props_match(g_.node(id).properties, s.properties)) ids.push_back(id);
      }
    }
    if (s.labels.size() > 1) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    return ids;
  }

  void apply(const NodeCheck& c, ResultTable&) {
    std::erase_if(rows_, [&](const Row& r) {
      const Node& n = g_.node(r[c.slot]);
      return !(labels_match(n, c.labels) && props_match(n.properties, c.properties));
    });
  }

  void apply(const Expand& x, ResultTable&) {
    std::vector<Row> next;
    for (const auto& row : rows_) {
      NodeId from = row[x.from];
      auto visit = [&](RelId rid, NodeId other) {
        const Relationship& rel = g_.relationship(rid);
        if (rel.type != x.rel_type) return;
        if (x.rel_bound && row[x.rel] != rid) return;
        for (Slot s : x.distinct_from)
          if (row[s] == rid) return;
        if (!props_match(rel.properties, x.rel_properties)) return;
        if (x.to_bound && row[x.to] != other) return;
        const Node& n = g_.node(other);
        if (!labels_match(n, x.to_labels) || !props_match(n.properties, x.to_properties)) return;
        Row r = row;
        r[x.rel] = rid;
        r[x.to] = other;
        next.push_back(std::move(r));
      };
      switch (x.direction) {
        case RelDirection::LeftToRight:
          for (RelId rid : g_.outgoing(from)) visit(rid, g_.relationship(rid).dst);
          break;
        case RelDirection::RightToLeft:
          for (RelId rid : g_.incoming(from)) visit(rid, g_.relationship(rid).src);
          break;
        case RelDirection::Undirected:
          for (RelId rid : g_.outgoing(from)) visit(rid, g_.relationship(rid).dst);
          for (RelId rid : g_.incoming(from)) {
            const Relationship& rel = g_.relationship(rid);
            if (rel.src != rel.dst) visit(rid, rel.src);  // self-loops already seen
          }
          break;
      }
    }
    rows_ = std::move(next);
  }

  void apply(const Filter& f, ResultTable&) {
    std::erase_if(rows_, [&](const Row& r) {
      auto resolve = [&](const std::string& var) {
        Slot s = plan_.slot_of.at(var);
        return ElementRef{plan_.kinds[s], r[s]};
      };
      return !eval(f.expr, g_, resolve, &stats_.type_mismatches);
    });
  }

  void apply(const Project& p, ResultTable& out) {
    for (const auto& item : p.items) out.columns.push_back(item.column);
    for (const auto& row : rows_) {
      std::vector<ElementRef> bound;
      for (Slot s = 0; s < row.size(); ++s) {
        if (row[s] == kUnbound) continue;
        bound.push_back({plan_.kinds[s], row[s]});
        if (plan_.kinds[s] == ElementKind::Node) {
          out.subgraph.nodes.insert(row[s]);
        } else {
          out.subgraph.rels.insert(row[s]);
        }
      }
      out.bindings.push_back(std::move(bound));
      std::vector<Cell> cells;
      cells.reserve(p.items.size());
      for (const auto& item : p.items) {
        ElementRef ref{plan_.kinds[item.slot], row[item.slot]};
        if (!item.key) {
          cells.emplace_back(ref);
        } else if (const PropertyValue* v = element_property(g_, ref, *item.key)) {
          cells.emplace_back(*v);
        } else {
          cells.emplace_back(std::monostate{});
        }
      }
      out.rows.push_back(std::move(cells));
    }
    out.stats = stats_;
  }

  const LogicalPlan& plan_;
  const Graph& g_;
  const ExecOptions& opts_;
  std::vector<Row> rows_;
  ExecStats stats_;
};

}  // namespace

std::string column_name(const ReturnItem& item) {
  if (item.alias) return *item.alias;
  if (const auto* pa = std::get_if<PropertyAccess>(&item.expr)) return pa->variable + "." + pa->key;
  return std::get<VariableRef>(item.expr).name;
}

Subgraph subgraph_of(const ResultTable& table, std::size_t row_count) {
  Subgraph sg;
  row_count = std::min(row_count, table.bindings.size());
  for (std::size_t i = 0; i < row_count; ++i) {
    for (const auto& ref : table.bindings[i]) {
      if (ref.kind == ElementKind::Node) {
        sg.nodes.insert(ref.id);
      } else {
        sg.rels.insert(ref.id);
      }
    }
  }
  return sg;
}

LogicalPlan plan(const QueryAst& ast) { return Planner().run(ast); }

std::vector<std::string> describe(const LogicalPlan& plan) {
  std::vector<std::string> out;
  const auto& v = plan.variables;
  for (const auto& step : plan.steps) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NodeScan>) {
            out.push_back("NodeScan " + v[s.slot] + labels_text(s.labels) +
                          (s.properties.empty() ? "" : props_text(s.properties)));
          } else if constexpr (std::is_same_v<T, NodeCheck>) {
            out.push_back("NodeCheck " + v[s.slot] + labels_text(s.labels) +
                          (s.properties.empty() ? "" : props_text(s.properties)));
          } else if constexpr (std::is_same_v<T, Expand>) {
            std::string rel = "[" + v[s.rel] + ":" + s.rel_type +
                              (s.rel_properties.empty() ? "" : props_text(s.rel_properties)) + "]";
            std::string arrow = s.direction == RelDirection::LeftToRight   ? "-" + rel + "->"
                                : s.direction == RelDirection::RightToLeft ? "<-" + rel + "-"
                                                                           : "-" + rel + "-";
            std::string line = "Expand " + v[s.from] + arrow + v[s.to] + labels_text(s.to_labels) +
                               (s.to_properties.empty() ? "" : props_text(s.to_properties));
            if (s.to_bound) line += " (join " + v[s.to] + ")";
            if (s.rel_bound) line += " (join " + v[s.rel] + ")";
            out.push_back(std::move(line));
          } else if constexpr (std::is_same_v<T, Filter>) {
            out.push_back("Filter " + print_expr(s.expr));
          } else {
            std::string line = "Project";
            for (std::size_t i = 0; i < s.items.size(); ++i) line += (i ? ", " : " ") + s.items[i].column;
            out.push_back(std::move(line));
          }
        },
        step);
  }
  return out;
}

ResultTable execute(const LogicalPlan& plan, const Graph& graph, const ExecOptions& options) {
  return Executor(plan, graph, options).run();
}

bool evaluate_predicate(const Expr& expr, const Bindings& bindings, const Graph& graph,
                        std::size_t* type_mismatches) {
  auto resolve = [&](const std::string& var) {
    auto it = bindings.find(var);
    if (it == bindings.end()) {
      throw PlanError(PlanError::Code::UnboundVariable, var, "variable '" + var + "' is not bound");
    }
    return it->second;
  };
  return eval(expr, graph, resolve, type_mismatches);
}

ResultTable run_query(std::string_view text, const Graph& graph, const ExecOptions& options) {
  return execute(plan(parse(text)), graph, options);
}

}  // namespace climakg::engine
