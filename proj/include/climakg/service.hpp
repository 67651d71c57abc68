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
#include <memory>
#include <string>

#include "climakg/graph.hpp"
#include "climakg/nlq.hpp"
#include "climakg/schema.hpp"

namespace climakg {

struct ServiceOptions {
  SchemaDef schema = builtin_climate_schema();
  /// POST /api/ingest answers 409 unless set.
  bool writable = false;
  std::size_t default_limit = 1000;
  bool snapshot_loaded = false;
};

/// HTTP front end over a published, immutable graph.
///
///   POST /api/query            {query, limit?}
///   POST /api/nlq              {text}
///   GET  /api/schema
///   GET  /api/nodes/{id}
///   GET  /api/nodes/{id}/neighbors?direction=out|in|both&type=
///   POST /api/ingest?strict=&dedup_mentions=   (NDJSON body)
///   GET  /health
///
/// Readers hold a shared_ptr to the graph they started with. Ingest copies
/// the current graph, applies the body, and swaps the pointer, so a query
/// never sees a half-applied request.
class Service {
 public:
  static constexpr int kDefaultPort = 8628;

  Service(Graph graph, ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds without serving. port 0 picks a free port. Returns the bound
  /// port, or -1 when binding fails.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after a successful bind().
  bool listen();
  void stop();
  void wait_until_ready() const;

  void set_translator(nlq::Translator translator);

  std::shared_ptr<const Graph> graph() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace climakg
