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

#include "climakg/wire.hpp"

namespace climakg::wire {

Json to_json(const PropertyValue& v) {
  switch (v.kind()) {
    case PropertyValue::Kind::Text: return v.as_text();
    case PropertyValue::Kind::Int: return v.as_int();
    case PropertyValue::Kind::Real: return v.as_real();
    case PropertyValue::Kind::Bool: return v.as_bool();
    case PropertyValue::Kind::TextList: return Json(v.as_text_list());
  }
  return nullptr;
}

Json to_json(const PropertyMap& props) {
  Json out = Json::object();
  for (const auto& [k, v] : props) out[k] = to_json(v);
  return out;
}

Json to_json(const engine::Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* v = std::get_if<PropertyValue>(&c)) return to_json(*v);
  const auto& ref = std::get<engine::ElementRef>(c);
  Json out = Json::object();
  out[ref.kind == engine::ElementKind::Node ? "node" : "rel"] = ref.id;
  return out;
}

Json node_json(const Node& n) {
  return Json{{"id", n.id}, {"labels", Json(std::vector<std::string>(n.labels.begin(), n.labels.end()))},
              {"properties", to_json(n.properties)}};
}

Json edge_json(const Relationship& r) {
  return Json{{"id", r.id}, {"type", r.type}, {"src", r.src}, {"dst", r.dst}, {"properties", to_json(r.properties)}};
}

Json subgraph_json(const engine::Subgraph& sg, const Graph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (NodeId id : sg.nodes) nodes.push_back(node_json(g.node(id)));
  for (RelId id : sg.rels) edges.push_back(edge_json(g.relationship(id)));
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json query_response(const engine::ResultTable& table, const Graph& g, std::size_t limit, double elapsed_ms) {
  Json rows = Json::array();
  const std::size_t kept = std::min(limit, table.rows.size());
  for (std::size_t i = 0; i < kept; ++i) {
    Json row = Json::array();
    for (const auto& c : table.rows[i]) row.push_back(to_json(c));
    rows.push_back(std::move(row));
  }
  engine::Subgraph sg = kept < table.rows.size() ? engine::subgraph_of(table, kept) : table.subgraph;
  Json out;
  out["columns"] = table.columns;
  out["rows"] = std::move(rows);
  out["subgraph"] = subgraph_json(sg, g);
  out["stats"] = Json{{"rows_total", table.rows.size()},
                      {"truncated", table.rows.size() > limit},
                      {"elapsed_ms", elapsed_ms}};
  return out;
}

Json schema_json(const SchemaDef& s) {
  Json rels = Json::array();
  for (const auto& [type, ep] : s.rel_types) {
    rels.push_back(Json{{"type", type},
                        {"src", Json(std::vector<std::string>(ep.src.begin(), ep.src.end()))},
                        {"dst", Json(std::vector<std::string>(ep.dst.begin(), ep.dst.end()))}});
  }
  Json keys = Json::object();
  for (const auto& [owner, ks] : s.property_keys) keys[owner] = std::vector<std::string>(ks.begin(), ks.end());
  return Json{{"node_labels", std::vector<std::string>(s.node_labels.begin(), s.node_labels.end())},
              {"rel_types", std::move(rels)},
              {"property_keys", std::move(keys)},
              {"extensible", s.extensible}};
}

Json stats_json(const ingest::IngestStats& s) {
  return Json{{"records_read", s.records_read},
              {"nodes_created", s.nodes_created},
              {"nodes_merged", s.nodes_merged},
              {"edges_created", s.edges_created},
              {"edges_merged", s.edges_merged},
              {"rejected", s.rejected},
              {"record_errors", s.record_errors},
              {"dangling_references", s.dangling_references},
              {"error_violations", s.error_violations},
              {"warnings", s.warnings},
              {"errors", s.errors()},
              {"messages", s.messages}};
}

Json translation_json(const nlq::TranslateResult& r) {
  if (const auto* miss = std::get_if<nlq::NoMatch>(&r)) {
    return Json{{"matched", false}, {"reasons", miss->reasons}};
  }
  const auto& t = std::get<nlq::Translation>(r);
  Json slots = Json::object();
  for (const auto& [k, v] : t.slots) slots[k] = v;
  return Json{{"matched", true}, {"template", t.template_id}, {"slots", std::move(slots)}, {"cypher", t.canonical_text}};
}

Json error_json(const std::string& code, const std::string& message, std::optional<std::size_t> offset) {
  Json out{{"code", code}, {"message", message}};
  if (offset) out["offset"] = *offset;
  return out;
}

}  // namespace climakg::wire
