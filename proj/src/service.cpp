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

#include "climakg/service.hpp"

#include <chrono>
#include <mutex>
#include <sstream>

#include <httplib.h>

#include "climakg/cypher.hpp"
#include "climakg/engine.hpp"
#include "climakg/ingest.hpp"
#include "climakg/wire.hpp"

namespace climakg {

using wire::Json;

struct Service::Impl {
  Impl(Graph g, ServiceOptions o) : options(std::move(o)), current(std::make_shared<const Graph>(std::move(g))) {}

  std::shared_ptr<const Graph> snapshot() const {
    std::lock_guard lock(graph_mutex);
    return current;
  }

  void publish(std::shared_ptr<const Graph> g) {
    std::lock_guard lock(graph_mutex);
    current = std::move(g);
  }

  void routes();

  ServiceOptions options;
  httplib::Server server;
  mutable std::mutex graph_mutex;
  std::shared_ptr<const Graph> current;
  std::mutex ingest_mutex;
  std::mutex translator_mutex;
  nlq::Translator translator;
};

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                std::optional<std::size_t> offset = {}) {
  send_json(res, status, wire::error_json(code, message, offset));
}

bool parse_body(const httplib::Request& req, httplib::Response& res, Json& out) {
  try {
    out = Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    send_error(res, 400, "bad_request", std::string("malformed JSON body: ") + e.what());
    return false;
  }
  if (!out.is_object()) {
    send_error(res, 400, "bad_request", "request body must be a JSON object");
    return false;
  }
  return true;
}

void send_query_error(httplib::Response& res, const cypher::ParseError& e) {
  send_error(res, 400, e.unsupported() ? "unsupported_feature" : "parse_error", e.what(), e.offset());
}

std::optional<NodeId> node_id(const httplib::Request& req, const Graph& g) {
  try {
    std::size_t used = 0;
    std::string s = req.matches[1];
    unsigned long long id = std::stoull(s, &used);
    if (used != s.size() || !g.has_node(id)) return std::nullopt;
    return id;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool flag(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return false;
  std::string v = req.get_param_value(name);
  return v == "true" || v == "1" || v.empty();
}

}  // namespace

void Service::Impl::routes() {
  // SO_REUSEADDR only: a second server on a busy port must fail to bind.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    auto g = snapshot();
    send_json(res, 200,
              Json{{"status", "ok"},
                   {"nodes", g->node_count()},
                   {"edges", g->relationship_count()},
                   {"snapshot_loaded", options.snapshot_loaded}});
  });

  server.Get("/api/schema", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, wire::schema_json(options.schema));
  });

  server.Post("/api/query", [this](const httplib::Request& req, httplib::Response& res) {
    Json body;
    if (!parse_body(req, res, body)) return;
    auto q = body.find("query");
    if (q == body.end() || !q->is_string()) {
      send_error(res, 400, "bad_request", "field 'query' must be a string");
      return;
    }
    std::size_t limit = options.default_limit;
    if (auto l = body.find("limit"); l != body.end() && !l->is_null()) {
      if (!l->is_number_integer() || l->get<std::int64_t>() <= 0) {
        send_error(res, 400, "bad_request", "field 'limit' must be a positive integer");
        return;
      }
      limit = l->get<std::size_t>();
    }
    auto g = snapshot();
    try {
      auto start = std::chrono::steady_clock::now();
      auto table = engine::run_query(q->get<std::string>(), *g);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      send_json(res, 200, wire::query_response(table, *g, limit, ms));
    } catch (const cypher::ParseError& e) {
      send_query_error(res, e);
    } catch (const engine::PlanError& e) {
      send_error(res, 400, "plan_error", e.what());
    }
  });

  server.Post("/api/nlq", [this](const httplib::Request& req, httplib::Response& res) {
    Json body;
    if (!parse_body(req, res, body)) return;
    auto t = body.find("text");
    if (t == body.end() || !t->is_string()) {
      send_error(res, 400, "bad_request", "field 'text' must be a string");
      return;
    }
    auto g = snapshot();
    try {
      std::lock_guard lock(translator_mutex);
      send_json(res, 200, wire::translation_json(translator.translate(t->get<std::string>(), *g)));
    } catch (const cypher::ParseError& e) {
      send_query_error(res, e);
    }
  });

  server.Get(R"(/api/nodes/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto g = snapshot();
    auto id = node_id(req, *g);
    if (!id) {
      send_error(res, 404, "not_found", "no node " + std::string(req.matches[1]));
      return;
    }
    send_json(res, 200, wire::node_json(g->node(*id)));
  });

  server.Get(R"(/api/nodes/(\d+)/neighbors)", [this](const httplib::Request& req, httplib::Response& res) {
    auto g = snapshot();
    auto id = node_id(req, *g);
    if (!id) {
      send_error(res, 404, "not_found", "no node " + std::string(req.matches[1]));
      return;
    }
    Direction dir = Direction::Both;
    if (req.has_param("direction")) {
      std::string d = req.get_param_value("direction");
      if (d == "out") {
        dir = Direction::Out;
      } else if (d == "in") {
        dir = Direction::In;
      } else if (d == "both") {
        dir = Direction::Both;
      } else {
        send_error(res, 400, "bad_request", "direction must be out, in or both");
        return;
      }
    }
    std::optional<std::string> type;
    if (req.has_param("type") && !req.get_param_value("type").empty()) type = req.get_param_value("type");

    Json nodes = Json::array(), edges = Json::array();
    std::set<NodeId> seen;
    for (const auto& nb : g->neighbors(*id, dir, type)) {
      edges.push_back(wire::edge_json(g->relationship(nb.rel)));
      if (seen.insert(nb.node).second) nodes.push_back(wire::node_json(g->node(nb.node)));
    }
    send_json(res, 200, Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}});
  });

  server.Post("/api/ingest", [this](const httplib::Request& req, httplib::Response& res) {
    if (!options.writable) {
      send_error(res, 409, "read_only", "server was started without --writable");
      return;
    }
    ingest::ApplyOptions opts;
    opts.strict = flag(req, "strict");
    opts.dedup_mentions = flag(req, "dedup_mentions");

    std::lock_guard lock(ingest_mutex);
    auto staging = std::make_shared<Graph>(*snapshot());
    std::istringstream in(req.body);
    ingest::IngestStats stats;
    try {
      stats = ingest::ingest_stream(*staging, options.schema, in, opts);
    } catch (const Error& e) {
      send_error(res, 500, "ingest_failed", e.what());
      return;
    }
    publish(std::move(staging));
    send_json(res, 200, wire::stats_json(stats));
  });
}

Service::Service(Graph graph, ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(graph), std::move(options))) {
  impl_->routes();
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

void Service::set_translator(nlq::Translator translator) {
  std::lock_guard lock(impl_->translator_mutex);
  impl_->translator = std::move(translator);
}

std::shared_ptr<const Graph> Service::graph() const { return impl_->snapshot(); }

}  // namespace climakg
