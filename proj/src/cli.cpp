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

#include "climakg/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "climakg/cypher.hpp"
#include "climakg/enrich.hpp"
#include "climakg/ingest.hpp"
#include "climakg/service.hpp"
#include "climakg/snapshot.hpp"
#include "climakg/wire.hpp"

namespace climakg::cli {

namespace {

struct Config {
  std::string corpus;
  std::string snapshot;
  std::string snapshot_out;
  std::string schema;
  std::string query;
  std::string query_file;
  std::string format = "table";
  std::string enrich_table;
  bool enrich_wikidata = false;
  bool strict = false;
  bool dedup_mentions = false;
  int port = Service::kDefaultPort;
  std::string host = "127.0.0.1";
  bool writable = false;
};

// Signals an environment problem (exit 2) as opposed to a user error.
struct EnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SchemaDef load_schema_opt(const Config& c) {
  if (c.schema.empty()) return builtin_climate_schema();
  try {
    return load_schema_file(c.schema);
  } catch (const IoFailure& e) {
    throw EnvironmentError(e.what());
  }
}

// Loads --snapshot, or ingests --corpus into a fresh graph.
Graph load_graph(const Config& c, const SchemaDef& schema, std::ostream& err, bool allow_empty = false) {
  try {
    if (!c.snapshot.empty()) return snapshot_load(c.snapshot);
    if (!c.corpus.empty()) {
      Graph g = ingest::make_ingest_graph();
      auto stats = ingest::ingest_file(g, schema, c.corpus, {c.strict, c.dedup_mentions});
      for (const auto& m : stats.messages) err << "warning: " << m << '\n';
      return g;
    }
  } catch (const IoFailure& e) {
    throw EnvironmentError(e.what());
  } catch (const FormatVersionMismatch& e) {
    throw EnvironmentError(e.what());
  } catch (const CorruptSnapshot& e) {
    throw EnvironmentError(e.what());
  }
  if (allow_empty) return Graph();
  throw std::invalid_argument("one of --snapshot or --corpus is required");
}

std::string query_text(const Config& c) {
  if (!c.query.empty()) return c.query;
  if (!c.query_file.empty()) {
    std::ifstream f(c.query_file);
    if (!f) throw EnvironmentError("cannot open query file " + c.query_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  throw std::invalid_argument("one of --query or --query-file is required");
}

std::string cell_text(const engine::Cell& c, const Graph& g) {
  if (std::holds_alternative<std::monostate>(c)) return "null";
  if (const auto* v = std::get_if<PropertyValue>(&c)) return display(*v);
  const auto& ref = std::get<engine::ElementRef>(c);
  if (ref.kind == engine::ElementKind::Node) {
    std::string labels;
    for (const auto& l : g.node(ref.id).labels) labels += ":" + l;
    return "(#" + std::to_string(ref.id) + labels + ")";
  }
  return "[#" + std::to_string(ref.id) + ":" + g.relationship(ref.id).type + "]";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

// Runs a query and reports failures the way every subcommand does.
std::optional<engine::ResultTable> run_reported(const std::string& text, const Graph& g, std::ostream& err) {
  try {
    return engine::run_query(text, g);
  } catch (const cypher::ParseError& e) {
    err << cypher::annotate_error(text, e);
  } catch (const engine::PlanError& e) {
    err << "plan error: " << e.what() << '\n';
  }
  return std::nullopt;
}

std::atomic<Service*> g_running_service{nullptr};

extern "C" void on_interrupt(int) {
  if (Service* s = g_running_service.load()) s->stop();
}

int cmd_ingest(const Config& c, std::ostream& out, std::ostream& err) {
  SchemaDef schema = load_schema_opt(c);
  Graph g = ingest::make_ingest_graph();
  ingest::IngestStats stats;
  try {
    stats = ingest::ingest_file(g, schema, c.corpus, {c.strict, c.dedup_mentions});
  } catch (const IoFailure& e) {
    throw EnvironmentError(e.what());
  }
  for (const auto& m : stats.messages) err << m << '\n';

  wire::Json report = wire::stats_json(stats);
  report.erase("messages");
  if (!c.enrich_table.empty()) {
    try {
      auto source = ingest::OfflineEnrichment::from_tsv(c.enrich_table);
      report["enriched"] = ingest::enrich_locations(g, source);
    } catch (const IoFailure& e) {
      throw EnvironmentError(e.what());
    }
  } else if (c.enrich_wikidata) {
    ingest::WikidataClient client;
    report["enriched"] = ingest::enrich_locations(g, client);
  }
  out << report.dump(2) << '\n';

  if (c.strict && stats.error_violations > 0) return kUserError;
  if (!c.snapshot_out.empty()) {
    try {
      snapshot_save(g, c.snapshot_out);
    } catch (const IoFailure& e) {
      throw EnvironmentError(e.what());
    }
  }
  return kOk;
}

int cmd_query(const Config& c, std::ostream& out, std::ostream& err) {
  SchemaDef schema = load_schema_opt(c);
  Graph g = load_graph(c, schema, err);
  std::string text = query_text(c);
  auto table = run_reported(text, g, err);
  if (!table) return kUserError;
  if (c.format == "ndjson") {
    out << render_ndjson(*table);
  } else if (c.format == "dot") {
    out << render_dot(*table, g);
  } else {
    out << render_table(*table, g);
  }
  return kOk;
}

int cmd_export_dot(const Config& c, std::ostream& out, std::ostream& err) {
  SchemaDef schema = load_schema_opt(c);
  Graph g = load_graph(c, schema, err);
  std::string text = query_text(c);
  auto table = run_reported(text, g, err);
  if (!table) return kUserError;
  out << render_dot(*table, g);
  return kOk;
}

int cmd_serve(const Config& c, std::ostream& out, std::ostream& err) {
  ServiceOptions opts;
  opts.schema = load_schema_opt(c);
  opts.writable = c.writable;
  opts.snapshot_loaded = !c.snapshot.empty();
  Graph g = load_graph(c, opts.schema, err, /*allow_empty=*/true);
  Service service(std::move(g), opts);
  int port = service.bind(c.host, c.port);
  if (port < 0) {
    err << "cannot bind " << c.host << ":" << c.port << '\n';
    return kEnvironmentError;
  }
  out << "listening on http://" << c.host << ":" << port << (c.writable ? " (writable)" : "") << std::endl;
  g_running_service = &service;
  auto old_int = std::signal(SIGINT, on_interrupt);
  auto old_term = std::signal(SIGTERM, on_interrupt);
  bool ok = service.listen();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  g_running_service = nullptr;
  return ok ? kOk : kEnvironmentError;
}

}  // namespace

std::string render_table(const engine::ResultTable& table, const Graph& graph) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& col : table.columns) width.push_back(col.size());
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i], graph));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << " | ";
      out << fields[i];
      if (i + 1 < fields.size()) out << std::string(width[i] - fields[i].size(), ' ');
    }
    out << '\n';
  };
  emit(table.columns);
  for (std::size_t i = 0; i < width.size(); ++i) out << (i ? "-+-" : "") << std::string(width[i], '-');
  out << '\n';
  for (const auto& line : cells) emit(line);
  return out.str();
}

std::string render_ndjson(const engine::ResultTable& table) {
  std::string out;
  for (const auto& row : table.rows) {
    wire::Json obj = wire::Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = wire::to_json(row[i]);
    out += obj.dump() + "\n";
  }
  return out;
}

std::string render_dot(const engine::ResultTable& table, const Graph& graph) {
  std::ostringstream out;
  out << "digraph result {\n";
  for (NodeId id : table.subgraph.nodes) {
    const Node& n = graph.node(id);
    std::string labels;
    for (const auto& l : n.labels) labels += (labels.empty() ? "" : "|") + l;
    std::string caption = "#" + std::to_string(id);
    for (const char* key : {"Name", "title"}) {
      if (const PropertyValue* v = n.property(key)) {
        caption = display(*v);
        break;
      }
    }
    out << "  n" << id << " [label=\"" << dot_escape(labels) << "\\n" << dot_escape(caption) << "\"];\n";
  }
  for (RelId id : table.subgraph.rels) {
    const Relationship& r = graph.relationship(id);
    out << "  n" << r.src << " -> n" << r.dst << " [label=\"" << dot_escape(r.type) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

int repl(const Graph& graph, const SchemaDef& schema, std::istream& in, std::ostream& out) {
  std::vector<std::string> history;
  std::string line;
  out << "climakg> " << std::flush;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      out << "climakg> " << std::flush;
      continue;
    }
    line = line.substr(first);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.pop_back();
    if (line == ":quit" || line == ":exit") break;
    if (line == ":schema") {
      out << serialize_schema(schema);
    } else if (line == ":history") {
      for (std::size_t i = 0; i < history.size(); ++i) out << (i + 1) << "  " << history[i] << '\n';
    } else if (line == ":help") {
      out << "enter a query on one line, or :schema, :history, :quit\n";
    } else {
      history.push_back(line);
      if (auto table = run_reported(line, graph, out)) out << render_table(*table, graph);
    }
    out << "climakg> " << std::flush;
  }
  out << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"climakg: climate literature knowledge graph engine", "climakg"};
  app.require_subcommand(1, 1);
  Config c;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--snapshot", c.snapshot, "Snapshot file to load");
    sub->add_option("--corpus", c.corpus, "NDJSON corpus to ingest instead of a snapshot");
    sub->add_option("--schema", c.schema, "Schema definition file (default: built-in climate schema)");
  };
  auto add_query = [&](CLI::App* sub) {
    auto q = sub->add_option("--query", c.query, "Query text");
    auto qf = sub->add_option("--query-file", c.query_file, "File holding the query");
    q->excludes(qf);
  };

  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest an NDJSON corpus and write a snapshot");
  ingest_cmd->add_option("--corpus", c.corpus, "NDJSON corpus")->required();
  ingest_cmd->add_option("--schema", c.schema, "Schema definition file");
  ingest_cmd->add_option("--snapshot-out", c.snapshot_out, "Where to write the snapshot");
  ingest_cmd->add_flag("--strict", c.strict, "Reject records with schema errors and exit 1 if any");
  ingest_cmd->add_flag("--dedup-mentions", c.dedup_mentions, "Merge mentions with identical sentences");
  ingest_cmd->add_option("--enrich-table", c.enrich_table, "TSV name->description table for Location nodes");
  ingest_cmd->add_flag("--enrich-wikidata", c.enrich_wikidata,
                       "Look up Location descriptions on Wikidata (CLIMAKG_WIKIDATA_ENDPOINT)");

  auto* query_cmd = app.add_subcommand("query", "Run one query");
  add_source(query_cmd);
  add_query(query_cmd);
  query_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "ndjson", "dot"}));
  query_cmd->add_flag("--strict", c.strict, "Strict ingest when using --corpus");

  auto* repl_cmd = app.add_subcommand("repl", "Interactive query loop");
  add_source(repl_cmd);

  auto* dot_cmd = app.add_subcommand("export-dot", "Write the result subgraph of a query as Graphviz");
  add_source(dot_cmd);
  add_query(dot_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  add_source(serve_cmd);
  serve_cmd->add_option("--port", c.port, "Port to listen on")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", c.host, "Address to bind");
  serve_cmd->add_flag("--writable", c.writable, "Accept POST /api/ingest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUserError;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(c, out, err);
    if (*query_cmd) return cmd_query(c, out, err);
    if (*dot_cmd) return cmd_export_dot(c, out, err);
    if (*serve_cmd) return cmd_serve(c, out, err);
    if (*repl_cmd) {
      SchemaDef schema = load_schema_opt(c);
      Graph g = load_graph(c, schema, err);
      return repl(g, schema, in, out);
    }
  } catch (const EnvironmentError& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironmentError;
  } catch (const SchemaParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }
  return kUserError;
}

}  // namespace climakg::cli
