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

#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace climakg::testing {

namespace {

using cypher::CompareOp;
using cypher::Expr;
using cypher::Literal;
using cypher::Operand;
using cypher::PropertyAccess;
using cypher::RelDirection;

struct Var {
  std::string name;
  bool is_rel = false;
};

struct Assignment {
  std::map<std::string, std::uint64_t> value;
  bool bound(const std::string& v) const { return value.count(v) != 0; }
};

// A constraint fires once every variable it mentions is bound.
struct Constraint {
  std::vector<std::string> vars;
  std::function<bool(const Assignment&)> check;
};

class Enumerator {
 public:
  Enumerator(const cypher::QueryAst& ast, const Graph& g) : ast_(ast), g_(g) {
    int anon = 0;
    for (const auto& clause : ast.clauses) {
      for (const auto& path : clause.patterns) {
        std::string prev = name_of(path.start.variable, anon);
        declare(prev, false);
        add_node_constraints(prev, path.start);
        std::vector<std::string> rel_names;
        for (const auto& step : path.steps) {
          std::string r = name_of(step.rel.variable, anon);
          std::string next = name_of(step.node.variable, anon);
          declare(r, true);
          declare(next, false);
          add_node_constraints(next, step.node);
          add_rel_constraints(prev, r, next, step.rel);
          for (const auto& earlier : rel_names) {
            constraints_.push_back({{earlier, r}, [earlier, r](const Assignment& a) {
                                      return a.value.at(earlier) != a.value.at(r);
                                    }});
          }
          rel_names.push_back(r);
          prev = next;
        }
      }
      if (clause.where) {
        std::set<std::string> used;
        collect_vars(*clause.where, used);
        const Expr* e = &*clause.where;
        constraints_.push_back({{used.begin(), used.end()}, [this, e](const Assignment& a) { return eval(*e, a); }});
      }
    }
  }

  std::vector<Row> run() {
    Assignment a;
    search(0, a);
    return std::move(rows_);
  }

 private:
  static std::string name_of(const std::optional<std::string>& v, int& anon) {
    return v ? *v : " anon" + std::to_string(anon++);
  }

  void declare(const std::string& name, bool is_rel) {
    for (const auto& v : vars_)
      if (v.name == name) return;
    vars_.push_back({name, is_rel});
    kinds_[name] = is_rel;
  }

  bool props_equal(const PropertyMap& props, const cypher::PropMap& want) const {
    for (const auto& e : want) {
      auto it = props.find(e.key);
      if (it == props.end() || !(it->second == e.value)) return false;
    }
    return true;
  }

  void add_node_constraints(const std::string& v, const cypher::NodePattern& np) {
    auto labels = np.labels;
    auto props = np.properties;
    constraints_.push_back({{v}, [this, v, labels, props](const Assignment& a) {
                              const Node& n = g_.nodes()[a.value.at(v)];
                              if (!labels.empty()) {
                                bool any = false;
                                for (const auto& l : labels) any = any || n.labels.count(l) > 0;
                                if (!any) return false;
                              }
                              return props_equal(n.properties, props);
                            }});
  }

  void add_rel_constraints(const std::string& from, const std::string& r, const std::string& to,
                           const cypher::RelPattern& rp) {
    auto type = rp.rel_type;
    auto props = rp.properties;
    auto dir = rp.direction;
    constraints_.push_back({{from, r, to}, [this, from, r, to, type, props, dir](const Assignment& a) {
                              const Relationship& rel = g_.relationships()[a.value.at(r)];
                              if (rel.type != type || !props_equal(rel.properties, props)) return false;
                              auto x = a.value.at(from), y = a.value.at(to);
                              bool fwd = rel.src == x && rel.dst == y;
                              bool back = rel.src == y && rel.dst == x;
                              if (dir == RelDirection::LeftToRight) return fwd;
                              if (dir == RelDirection::RightToLeft) return back;
                              return fwd || back;
                            }});
  }

  static void collect_vars(const Expr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, cypher::OrExpr> || std::is_same_v<T, cypher::AndExpr>) {
            for (const auto& o : n.operands) collect_vars(o, out);
          } else if constexpr (std::is_same_v<T, cypher::ParenExpr>) {
            collect_vars(*n.inner, out);
          } else {
            for (const Operand* op : {&n.lhs, &n.rhs})
              if (const auto* pa = std::get_if<PropertyAccess>(op)) out.insert(pa->variable);
          }
        },
        e.node);
  }

  std::optional<PropertyValue> operand_value(const Operand& op, const Assignment& a) const {
    if (const auto* lit = std::get_if<Literal>(&op)) return lit->value;
    const auto& pa = std::get<PropertyAccess>(op);
    std::uint64_t id = a.value.at(pa.variable);
    const PropertyMap& props = kinds_.at(pa.variable) ? g_.relationships()[id].properties : g_.nodes()[id].properties;
    auto it = props.find(pa.key);
    if (it == props.end()) return std::nullopt;
    return it->second;
  }

  bool eval(const Expr& e, const Assignment& a) const {
    if (const auto* o = std::get_if<cypher::OrExpr>(&e.node)) {
      return std::any_of(o->operands.begin(), o->operands.end(), [&](const Expr& x) { return eval(x, a); });
    }
    if (const auto* n = std::get_if<cypher::AndExpr>(&e.node)) {
      return std::all_of(n->operands.begin(), n->operands.end(), [&](const Expr& x) { return eval(x, a); });
    }
    if (const auto* p = std::get_if<cypher::ParenExpr>(&e.node)) return eval(*p->inner, a);
    const auto& c = std::get<cypher::CompareExpr>(e.node);
    auto l = operand_value(c.lhs, a);
    auto r = operand_value(c.rhs, a);
    if (!l || !r) return false;
    switch (c.op) {
      case CompareOp::Eq:
        return *l == *r;
      case CompareOp::Contains:
        return l->is_text() && r->is_text() && l->as_text().find(r->as_text()) != std::string::npos;
      case CompareOp::In:
        if (!l->is_text() || !r->is_text_list()) return false;
        for (const auto& s : r->as_text_list())
          if (s == l->as_text()) return true;
        return false;
    }
    return false;
  }

  bool satisfied(const Assignment& a, const std::string& just_bound) const {
    for (const auto& c : constraints_) {
      if (std::find(c.vars.begin(), c.vars.end(), just_bound) == c.vars.end()) continue;
      bool ready = std::all_of(c.vars.begin(), c.vars.end(), [&](const std::string& v) { return a.bound(v); });
      if (ready && !c.check(a)) return false;
    }
    return true;
  }

  void search(std::size_t i, Assignment& a) {
    if (i == vars_.size()) {
      emit(a);
      return;
    }
    const Var& v = vars_[i];
    std::size_t n = v.is_rel ? g_.relationships().size() : g_.nodes().size();
    for (std::uint64_t id = 0; id < n; ++id) {
      a.value[v.name] = id;
      if (satisfied(a, v.name)) search(i + 1, a);
    }
    a.value.erase(v.name);
  }

  void emit(const Assignment& a) {
    for (const auto& c : constraints_)
      if (c.vars.empty() && !c.check(a)) return;
    Row row;
    for (const auto& item : ast_.return_clause.items) {
      if (const auto* pa = std::get_if<PropertyAccess>(&item.expr)) {
        auto v = operand_value(Operand{*pa}, a);
        if (v) {
          row.emplace_back(*v);
        } else {
          row.emplace_back(std::monostate{});
        }
      } else {
        const auto& name = std::get<cypher::VariableRef>(item.expr).name;
        row.emplace_back(engine::ElementRef{kinds_.at(name) ? engine::ElementKind::Relationship : engine::ElementKind::Node,
                                            a.value.at(name)});
      }
    }
    rows_.push_back(std::move(row));
  }

  const cypher::QueryAst& ast_;
  const Graph& g_;
  std::vector<Var> vars_;
  std::map<std::string, bool> kinds_;
  std::vector<Constraint> constraints_;
  std::vector<Row> rows_;
};

std::string value_key(const PropertyValue& v) {
  std::string k = std::to_string(static_cast<int>(v.kind())) + ":";
  if (v.is_text_list()) {
    for (const auto& s : v.as_text_list()) k += s + "\x1f";
    return k;
  }
  return k + display(v);
}

}  // namespace

std::vector<Row> oracle_rows(const cypher::QueryAst& ast, const Graph& graph) { return Enumerator(ast, graph).run(); }

std::string row_key(const Row& row) {
  std::string out;
  for (const auto& c : row) {
    if (std::holds_alternative<std::monostate>(c)) {
      out += "null";
    } else if (const auto* v = std::get_if<PropertyValue>(&c)) {
      out += value_key(*v);
    } else {
      const auto& r = std::get<engine::ElementRef>(c);
      out += (r.kind == engine::ElementKind::Node ? "node#" : "rel#") + std::to_string(r.id);
    }
    out += '\x1e';
  }
  return out;
}

std::vector<std::string> bag(const std::vector<Row>& rows) {
  std::vector<std::string> keys;
  for (const auto& r : rows) keys.push_back(row_key(r));
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace climakg::testing
