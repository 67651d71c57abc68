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

#include "climakg/schema.hpp"

#include <fstream>
#include <sstream>

namespace climakg {

const char* to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::UnknownLabel: return "UnknownLabel";
    case ViolationKind::UnknownRelType: return "UnknownRelType";
    case ViolationKind::BadEndpoint: return "BadEndpoint";
    case ViolationKind::UnknownPropertyKey: return "UnknownPropertyKey";
  }
  return "?";
}

bool has_errors(const std::vector<Violation>& vs) {
  for (const auto& v : vs)
    if (v.severity == Severity::Error) return true;
  return false;
}

SchemaDef builtin_climate_schema() {
  SchemaDef s;
  s.node_labels = {"Paper", "Weather_Event", "Location", "Teleconnection", "Model", "Project"};
  s.rel_types["Mention"] = {{"Paper"}, {"Weather_Event", "Teleconnection", "Model", "Project", "Location"}};
  s.rel_types["TargetsLocation"] = {{"Weather_Event", "Teleconnection"}, {"Location"}};
  s.property_keys["Paper"] = {"title"};
  for (const char* l : {"Weather_Event", "Teleconnection", "Model", "Project"}) s.property_keys[l] = {"Name"};
  s.property_keys["Location"] = {"Name", "wikidata_description"};
  s.property_keys["Mention"] = {"Mention_Sentence"};
  s.extensible = true;
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::set<std::string> parse_label_list(std::size_t line, const std::string& field,
                                       const std::string& prefix) {
  if (field.rfind(prefix, 0) != 0) throw SchemaParseError(line, "expected '" + prefix + "<labels>'");
  std::set<std::string> out;
  for (auto& l : split(field.substr(prefix.size()), ',')) {
    if (l.empty()) throw SchemaParseError(line, "empty label in '" + field + "'");
    out.insert(l);
  }
  return out;
}

}  // namespace

SchemaDef load_schema(std::string_view text) {
  SchemaDef s;
  s.extensible = true;
  struct Pending {
    std::size_t line;
    std::string subject;
    std::set<std::string> labels;
  };
  std::vector<Pending> rel_refs, prop_refs;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> f;
    for (std::string w; ls >> w;) f.push_back(w);
    if (f.empty()) continue;

    const std::string& kw = f[0];
    if (kw == "node") {
      if (f.size() != 2) throw SchemaParseError(lineno, "expected 'node <Label>'");
      s.node_labels.insert(f[1]);
    } else if (kw == "rel") {
      if (f.size() != 4) throw SchemaParseError(lineno, "expected 'rel <Type> src=<labels> dst=<labels>'");
      RelEndpoints ep{parse_label_list(lineno, f[2], "src="), parse_label_list(lineno, f[3], "dst=")};
      std::set<std::string> all = ep.src;
      all.insert(ep.dst.begin(), ep.dst.end());
      rel_refs.push_back({lineno, f[1], std::move(all)});
      if (!s.rel_types.emplace(f[1], std::move(ep)).second)
        throw SchemaParseError(lineno, "duplicate rel type '" + f[1] + "'");
    } else if (kw == "prop") {
      if (f.size() != 3) throw SchemaParseError(lineno, "expected 'prop <Label|Type> <key>'");
      prop_refs.push_back({lineno, f[1], {}});
      s.property_keys[f[1]].insert(f[2]);
    } else if (kw == "extensible") {
      if (f.size() != 2 || (f[1] != "true" && f[1] != "false"))
        throw SchemaParseError(lineno, "expected 'extensible <true|false>'");
      s.extensible = f[1] == "true";
    } else {
      throw SchemaParseError(lineno, "unknown directive '" + kw + "'");
    }
  }

  for (const auto& r : rel_refs)
    for (const auto& l : r.labels)
      if (!s.node_labels.count(l))
        throw SchemaParseError(r.line, "rel '" + r.subject + "' references undeclared label '" + l + "'");
  for (const auto& p : prop_refs)
    if (!s.node_labels.count(p.subject) && !s.rel_types.count(p.subject))
      throw SchemaParseError(p.line, "prop on undeclared label or type '" + p.subject + "'");
  return s;
}

SchemaDef load_schema_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open schema file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return load_schema(ss.str());
}

std::string serialize_schema(const SchemaDef& s) {
  std::ostringstream out;
  for (const auto& l : s.node_labels) out << "node " << l << '\n';
  auto join = [](const std::set<std::string>& xs) {
    std::string j;
    for (const auto& x : xs) j += (j.empty() ? "" : ",") + x;
    return j;
  };
  for (const auto& [type, ep] : s.rel_types)
    out << "rel " << type << " src=" << join(ep.src) << " dst=" << join(ep.dst) << '\n';
  for (const auto& [owner, keys] : s.property_keys)
    for (const auto& k : keys) out << "prop " << owner << ' ' << k << '\n';
  out << "extensible " << (s.extensible ? "true" : "false") << '\n';
  return out.str();
}

std::vector<Violation> validate_node(const SchemaDef& schema, const Node& node) {
  std::vector<Violation> out;
  std::set<std::string> allowed;
  bool any_known = false;
  for (const auto& l : node.labels) {
    if (!schema.node_labels.count(l)) {
      out.push_back({node.id, false, ViolationKind::UnknownLabel, Severity::Error, "label '" + l + "'"});
      continue;
    }
    any_known = true;
    if (auto it = schema.property_keys.find(l); it != schema.property_keys.end())
      allowed.insert(it->second.begin(), it->second.end());
  }
  if (!any_known) return out;
  for (const auto& [key, value] : node.properties) {
    if (allowed.count(key)) continue;
    out.push_back({node.id, false, ViolationKind::UnknownPropertyKey,
                   schema.extensible ? Severity::Warning : Severity::Error, "property '" + key + "'"});
  }
  return out;
}

std::vector<Violation> validate_edge(const SchemaDef& schema, const std::string& type,
                                     const Node& src, const Node& dst,
                                     const PropertyMap& properties, std::uint64_t rel_id) {
  std::vector<Violation> out;
  auto it = schema.rel_types.find(type);
  if (it == schema.rel_types.end()) {
    out.push_back({rel_id, true, ViolationKind::UnknownRelType,
                   schema.extensible ? Severity::Warning : Severity::Error, "type '" + type + "'"});
    return out;
  }
  auto allowed_any = [](const std::set<std::string>& allowed, const Node& n) {
    for (const auto& l : n.labels)
      if (allowed.count(l)) return true;
    return false;
  };
  if (!allowed_any(it->second.src, src))
    out.push_back({rel_id, true, ViolationKind::BadEndpoint, Severity::Error,
                   type + " cannot start at node " + std::to_string(src.id)});
  if (!allowed_any(it->second.dst, dst))
    out.push_back({rel_id, true, ViolationKind::BadEndpoint, Severity::Error,
                   type + " cannot end at node " + std::to_string(dst.id)});

  auto keys = schema.property_keys.find(type);
  for (const auto& [key, value] : properties) {
    if (keys != schema.property_keys.end() && keys->second.count(key)) continue;
    out.push_back({rel_id, true, ViolationKind::UnknownPropertyKey,
                   schema.extensible ? Severity::Warning : Severity::Error, "property '" + key + "'"});
  }
  return out;
}

std::vector<Violation> validate_relationship(const SchemaDef& schema, const Graph& graph,
                                             const Relationship& rel) {
  return validate_edge(schema, rel.type, graph.node(rel.src), graph.node(rel.dst), rel.properties, rel.id);
}

}  // namespace climakg
