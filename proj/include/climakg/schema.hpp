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
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "climakg/error.hpp"
#include "climakg/graph.hpp"

namespace climakg {

struct RelEndpoints {
  std::set<std::string> src;
  std::set<std::string> dst;
  friend bool operator==(const RelEndpoints&, const RelEndpoints&) = default;
};

/// Registry of allowed labels, relationship types with their endpoint label
/// sets, and known property keys (keyed by label or relationship type).
struct SchemaDef {
  std::set<std::string> node_labels;
  std::map<std::string, RelEndpoints> rel_types;
  std::map<std::string, std::set<std::string>> property_keys;
  bool extensible = true;

  friend bool operator==(const SchemaDef&, const SchemaDef&) = default;
};

enum class ViolationKind { UnknownLabel, UnknownRelType, BadEndpoint, UnknownPropertyKey };
enum class Severity { Error, Warning };

struct Violation {
  std::uint64_t element_id = 0;
  bool on_relationship = false;
  ViolationKind kind = ViolationKind::UnknownLabel;
  Severity severity = Severity::Error;
  std::string detail;
};

const char* to_string(ViolationKind k) noexcept;
bool has_errors(const std::vector<Violation>& vs);

class SchemaParseError : public Error {
 public:
  SchemaParseError(std::size_t line, const std::string& message)
      : Error("schema line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Paper, Weather_Event, Location, Teleconnection, Model, Project with the
/// Mention and TargetsLocation relationship types. Extensible.
SchemaDef builtin_climate_schema();

/// Parses the line format:
///   node <Label>
///   rel <Type> src=<L1,L2> dst=<L3>
///   prop <Label|Type> <key>
///   extensible <true|false>
/// with `#` starting a comment. Declarations may appear in any order.
SchemaDef load_schema(std::string_view definition_text);
SchemaDef load_schema_file(const std::string& path);
std::string serialize_schema(const SchemaDef& s);

/// Unknown labels are errors. Unknown property keys are warnings on an
/// extensible schema and errors otherwise.
std::vector<Violation> validate_node(const SchemaDef& schema, const Node& node);

/// Unknown relationship types are warnings on an extensible schema (no
/// endpoint check is possible) and errors otherwise. BadEndpoint is raised
/// when none of the source (or target) labels is allowed.
std::vector<Violation> validate_relationship(const SchemaDef& schema, const Graph& graph,
                                             const Relationship& rel);

/// Endpoint/property check for an edge that may not exist in a graph yet.
std::vector<Violation> validate_edge(const SchemaDef& schema, const std::string& type,
                                     const Node& src, const Node& dst,
                                     const PropertyMap& properties, std::uint64_t rel_id = 0);

}  // namespace climakg
