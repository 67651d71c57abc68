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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "climakg/error.hpp"
#include "climakg/graph.hpp"
#include "climakg/schema.hpp"

namespace climakg::ingest {

/// (label, Name) for entities. For label "Paper" the name is the paper key:
/// its doi when it has one, else its title.
struct EntityKey {
  std::string label;
  std::string name;
  friend bool operator==(const EntityKey&, const EntityKey&) = default;
};

struct EntityRecord {
  std::string label;
  std::string name;
  PropertyMap properties;
};

struct PaperRecord {
  std::string title;
  std::optional<std::string> doi;
  PropertyMap properties;
};

struct MentionRecord {
  std::string paper;  // doi or title
  EntityKey target;
  std::string sentence;
};

struct RelationRecord {
  std::string rel_type;
  EntityKey src;
  EntityKey dst;
  PropertyMap properties;
};

using IngestRecord = std::variant<EntityRecord, PaperRecord, MentionRecord, RelationRecord>;

class RecordError : public Error {
 public:
  RecordError(std::size_t line, std::string field, const std::string& message)
      : Error("line " + std::to_string(line) + (field.empty() ? "" : " field '" + field + "'") + ": " + message),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class DanglingReference : public Error {
 public:
  explicit DanglingReference(const std::string& what) : Error("dangling reference: " + what) {}
};

/// Parses one NDJSON corpus line. Field names: kind, label, name,
/// properties, title, doi, paper, target, sentence, rel_type, src, dst.
IngestRecord parse_record(std::string_view line, std::size_t line_no = 0);

enum class Outcome { Created, Merged, Rejected };

struct ApplyResult {
  Outcome outcome = Outcome::Created;
  std::vector<Violation> violations;
};

struct ApplyOptions {
  /// Reject (without mutating) records with error-level schema violations.
  bool strict = false;
  /// Treat a mention with the same (paper, target, sentence) as a merge.
  bool dedup_mentions = false;
};

/// Entities and papers merge by key (last writer wins per property).
/// Mentions always add a parallel edge unless dedup_mentions is set.
/// Relations merge when an edge with the same (src, dst, type, properties)
/// already exists. Throws DanglingReference for unresolvable keys.
ApplyResult apply_record(Graph& graph, const SchemaDef& schema, const IngestRecord& record,
                         const ApplyOptions& options = {});

struct IngestStats {
  std::size_t records_read = 0;
  std::size_t nodes_created = 0;
  std::size_t nodes_merged = 0;
  std::size_t edges_created = 0;
  std::size_t edges_merged = 0;
  std::size_t rejected = 0;
  std::size_t record_errors = 0;
  std::size_t dangling_references = 0;
  std::size_t error_violations = 0;
  std::size_t warnings = 0;
  std::vector<std::string> messages;  // one per failed line

  std::size_t errors() const noexcept { return record_errors + dangling_references + error_violations; }
};

/// Applies records in order, skipping blank lines. Bad lines are counted and
/// processing continues.
IngestStats ingest_stream(Graph& graph, const SchemaDef& schema, std::istream& in,
                          const ApplyOptions& options = {});
IngestStats ingest_file(Graph& graph, const SchemaDef& schema, const std::filesystem::path& path,
                        const ApplyOptions& options = {});

/// Graph with the keys ingest looks nodes up by (Name, title, doi) indexed.
Graph make_ingest_graph();

}  // namespace climakg::ingest
