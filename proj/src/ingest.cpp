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

#include "climakg/ingest.hpp"

#include <fstream>
#include <istream>

#include <json.hpp>

namespace climakg::ingest {

using nlohmann::json;

namespace {

PropertyValue to_property(const json& v, std::size_t line, const std::string& field) {
  if (v.is_string()) return PropertyValue(v.get<std::string>());
  if (v.is_boolean()) return PropertyValue(v.get<bool>());
  if (v.is_number_integer()) return PropertyValue(v.get<std::int64_t>());
  if (v.is_number_float()) return PropertyValue(v.get<double>());
  if (v.is_array()) {
    TextList items;
    for (const auto& e : v) {
      if (!e.is_string()) throw RecordError(line, field, "list properties must hold strings only");
      items.push_back(e.get<std::string>());
    }
    return PropertyValue(std::move(items));
  }
  throw RecordError(line, field, "unsupported property value type");
}

const json& required(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) throw RecordError(line, field, "missing required field");
  return *it;
}

std::string required_string(const json& obj, const char* field, std::size_t line) {
  const json& v = required(obj, field, line);
  if (!v.is_string()) throw RecordError(line, field, "expected a string");
  std::string s = v.get<std::string>();
  if (s.empty()) throw RecordError(line, field, "must not be empty");
  return s;
}

PropertyMap properties_of(const json& obj, std::size_t line) {
  PropertyMap props;
  auto it = obj.find("properties");
  if (it == obj.end() || it->is_null()) return props;
  if (!it->is_object()) throw RecordError(line, "properties", "expected an object");
  for (const auto& [k, v] : it->items()) {
    if (k.empty()) throw RecordError(line, "properties", "empty property key");
    props.emplace(k, to_property(v, line, "properties." + k));
  }
  return props;
}

EntityKey key_of(const json& obj, const char* field, std::size_t line) {
  const json& v = required(obj, field, line);
  if (!v.is_object()) throw RecordError(line, field, "expected an object with label and name");
  return {required_string(v, "label", line), required_string(v, "name", line)};
}

// A paper's key is its doi, or its title when it has none.
std::optional<NodeId> find_paper_by_title(const Graph& g, const std::string& title) {
  for (NodeId id : g.nodes_by_label_property("Paper", "title", PropertyValue(title))) {
    if (!g.node(id).property("doi")) return id;
  }
  return std::nullopt;
}

std::optional<NodeId> find_paper(const Graph& g, const std::string& key) {
  auto ids = g.nodes_by_label_property("Paper", "doi", PropertyValue(key));
  if (!ids.empty()) return ids.front();
  return find_paper_by_title(g, key);
}

std::optional<NodeId> find_entity(const Graph& g, const EntityKey& key) {
  if (key.label == "Paper") return find_paper(g, key.name);
  auto ids = g.nodes_by_label_property(key.label, "Name", PropertyValue(key.name));
  if (ids.empty()) return std::nullopt;
  return ids.front();
}

NodeId resolve(const Graph& g, const EntityKey& key) {
  if (auto id = find_entity(g, key)) return *id;
  throw DanglingReference(key.label + " '" + key.name + "'");
}

// Creates or merges a node under `existing`, validating the merged result.
ApplyResult upsert_node(Graph& g, const SchemaDef& schema, std::optional<NodeId> existing,
                        LabelSet labels, const PropertyMap& props, bool strict) {
  Node preview;
  if (existing) {
    preview = g.node(*existing);
    for (const auto& [k, v] : props) preview.properties[k] = v;
  } else {
    preview.id = g.node_count();
    preview.labels = std::move(labels);
    preview.properties = props;
  }
  ApplyResult res;
  res.violations = validate_node(schema, preview);
  if (strict && has_errors(res.violations)) {
    res.outcome = Outcome::Rejected;
    return res;
  }
  if (existing) {
    for (const auto& [k, v] : props) g.set_node_property(*existing, k, v);
    res.outcome = Outcome::Merged;
  } else {
    g.add_node(std::move(preview.labels), std::move(preview.properties));
    res.outcome = Outcome::Created;
  }
  return res;
}

ApplyResult add_edge(Graph& g, const SchemaDef& schema, NodeId src, NodeId dst, const std::string& type,
                     PropertyMap props, bool merge_if_equal, bool strict) {
  ApplyResult res;
  if (merge_if_equal) {
    for (RelId rid : g.outgoing(src)) {
      const Relationship& r = g.relationship(rid);
      if (r.dst == dst && r.type == type && r.properties == props) {
        res.outcome = Outcome::Merged;
        return res;
      }
    }
  }
  res.violations = validate_edge(schema, type, g.node(src), g.node(dst), props, g.relationship_count());
  if (strict && has_errors(res.violations)) {
    res.outcome = Outcome::Rejected;
    return res;
  }
  g.add_relationship(src, dst, type, std::move(props));
  res.outcome = Outcome::Created;
  return res;
}

}  // namespace

IngestRecord parse_record(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw RecordError(line_no, "", std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw RecordError(line_no, "", "record must be a JSON object");
  const std::string kind = required_string(obj, "kind", line_no);

  if (kind == "entity") {
    EntityRecord r{required_string(obj, "label", line_no), required_string(obj, "name", line_no),
                   properties_of(obj, line_no)};
    if (r.label == "Paper") throw RecordError(line_no, "label", "papers use kind \"paper\"");
    return r;
  }
  if (kind == "paper") {
    PaperRecord r;
    r.title = required_string(obj, "title", line_no);
    if (auto it = obj.find("doi"); it != obj.end() && !it->is_null()) {
      if (!it->is_string() || it->get<std::string>().empty())
        throw RecordError(line_no, "doi", "expected a non-empty string");
      r.doi = it->get<std::string>();
    }
    r.properties = properties_of(obj, line_no);
    return r;
  }
  if (kind == "mention") {
    return MentionRecord{required_string(obj, "paper", line_no), key_of(obj, "target", line_no),
                         required_string(obj, "sentence", line_no)};
  }
  if (kind == "relation") {
    return RelationRecord{required_string(obj, "rel_type", line_no), key_of(obj, "src", line_no),
                          key_of(obj, "dst", line_no), properties_of(obj, line_no)};
  }
  throw RecordError(line_no, "kind", "unknown record kind '" + kind + "'");
}

ApplyResult apply_record(Graph& graph, const SchemaDef& schema, const IngestRecord& record,
                         const ApplyOptions& options) {
  return std::visit(
      [&](const auto& r) -> ApplyResult {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EntityRecord>) {
          PropertyMap props = r.properties;
          props["Name"] = PropertyValue(r.name);
          return upsert_node(graph, schema, find_entity(graph, {r.label, r.name}), {r.label}, props,
                             options.strict);
        } else if constexpr (std::is_same_v<T, PaperRecord>) {
          PropertyMap props = r.properties;
          props["title"] = PropertyValue(r.title);
          std::optional<NodeId> existing;
          if (r.doi) {
            props["doi"] = PropertyValue(*r.doi);
            auto ids = graph.nodes_by_label_property("Paper", "doi", PropertyValue(*r.doi));
            if (!ids.empty()) existing = ids.front();
          } else {
            existing = find_paper_by_title(graph, r.title);
          }
          return upsert_node(graph, schema, existing, {"Paper"}, props, options.strict);
        } else if constexpr (std::is_same_v<T, MentionRecord>) {
          NodeId paper = resolve(graph, {"Paper", r.paper});
          NodeId target = resolve(graph, r.target);
          return add_edge(graph, schema, paper, target, "Mention",
                          {{"Mention_Sentence", PropertyValue(r.sentence)}}, options.dedup_mentions,
                          options.strict);
        } else {
          NodeId src = resolve(graph, r.src);
          NodeId dst = resolve(graph, r.dst);
          return add_edge(graph, schema, src, dst, r.rel_type, r.properties, true, options.strict);
        }
      },
      record);
}

IngestStats ingest_stream(Graph& graph, const SchemaDef& schema, std::istream& in,
                          const ApplyOptions& options) {
  IngestStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++stats.records_read;
    try {
      IngestRecord rec = parse_record(line, line_no);
      bool is_node = std::holds_alternative<EntityRecord>(rec) || std::holds_alternative<PaperRecord>(rec);
      ApplyResult res = apply_record(graph, schema, rec, options);
      for (const auto& v : res.violations) {
        if (v.severity == Severity::Error) {
          ++stats.error_violations;
        } else {
          ++stats.warnings;
        }
      }
      switch (res.outcome) {
        case Outcome::Created: ++(is_node ? stats.nodes_created : stats.edges_created); break;
        case Outcome::Merged: ++(is_node ? stats.nodes_merged : stats.edges_merged); break;
        case Outcome::Rejected:
          ++stats.rejected;
          stats.messages.push_back("line " + std::to_string(line_no) + ": rejected by schema");
          break;
      }
    } catch (const RecordError& e) {
      ++stats.record_errors;
      stats.messages.push_back(e.what());
    } catch (const DanglingReference& e) {
      ++stats.dangling_references;
      stats.messages.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoFailure("read failure while ingesting");
  return stats;
}

IngestStats ingest_file(Graph& graph, const SchemaDef& schema, const std::filesystem::path& path,
                        const ApplyOptions& options) {
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open corpus " + path.string());
  return ingest_stream(graph, schema, f, options);
}

Graph make_ingest_graph() { return Graph({"Name", "title", "doi"}); }

}  // namespace climakg::ingest
