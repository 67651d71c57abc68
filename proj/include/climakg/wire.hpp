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
#include <string>

#include <json.hpp>

#include "climakg/engine.hpp"
#include "climakg/graph.hpp"
#include "climakg/ingest.hpp"
#include "climakg/nlq.hpp"
#include "climakg/schema.hpp"

// JSON shapes shared by the HTTP service and the CLI.
namespace climakg::wire {

using Json = nlohmann::ordered_json;

Json to_json(const PropertyValue& v);
Json to_json(const PropertyMap& props);
/// null | property value | {"node": id} | {"rel": id}
Json to_json(const engine::Cell& c);

/// {id, labels, properties}
Json node_json(const Node& n);
/// {id, type, src, dst, properties}
Json edge_json(const Relationship& r);
/// {nodes: [...], edges: [...]}, both ascending by id.
Json subgraph_json(const engine::Subgraph& sg, const Graph& g);

/// {columns, rows, subgraph, stats: {rows_total, truncated, elapsed_ms}}.
/// Rows beyond `limit` are dropped; the subgraph covers the kept rows.
Json query_response(const engine::ResultTable& table, const Graph& g, std::size_t limit, double elapsed_ms);

Json schema_json(const SchemaDef& s);
Json stats_json(const ingest::IngestStats& s);
Json translation_json(const nlq::TranslateResult& r);

/// {code, message[, offset]}
Json error_json(const std::string& code, const std::string& message, std::optional<std::size_t> offset = {});

}  // namespace climakg::wire
