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

#include <iosfwd>
#include <string>

#include "climakg/engine.hpp"
#include "climakg/graph.hpp"
#include "climakg/schema.hpp"

namespace climakg::cli {

enum ExitCode : int { kOk = 0, kUserError = 1, kEnvironmentError = 2 };

/// Entry point behind the `climakg` binary. Subcommands: ingest, query,
/// repl, export-dot, serve.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Aligned text table: header, dashed rule, one line per row.
std::string render_table(const engine::ResultTable& table, const Graph& graph);
/// One JSON object per row keyed by column name.
std::string render_ndjson(const engine::ResultTable& table);
/// Graphviz digraph of the result subgraph, ordered by id.
std::string render_dot(const engine::ResultTable& table, const Graph& graph);

/// Reads one query per line until `:quit` or end of input.
int repl(const Graph& graph, const SchemaDef& schema, std::istream& in, std::ostream& out);

}  // namespace climakg::cli
