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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <httplib.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "climakg/cypher.hpp"
#include "climakg/engine.hpp"
#include "climakg/ingest.hpp"
#include "climakg/nlq.hpp"
#include "climakg/snapshot.hpp"
#include "fixture.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "server.hpp"

namespace {

using namespace climakg;
using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;
using Rows = std::vector<std::vector<std::string>>;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure; later checks still run but keep the first note.
struct Checker {
  Outcome out;
  void check(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Rows shown(const engine::ResultTable& t) {
  Rows out;
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : r) {
      const auto* v = std::get_if<PropertyValue>(&c);
      line.push_back(v ? display(*v) : "null");
    }
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rows shown(const Json& rows) {
  Rows out;
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (const auto& c : r) line.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_type(const Graph& g, const std::string& type) {
  std::size_t n = 0;
  for (const auto& r : g.relationships()) n += r.type == type;
  return n;
}

Outcome conformance() {
  Checker c;
  auto start = Clock::now();
  Graph g = testing::load_fixture();
  for (int n = 1; n <= 3; ++n) {
    auto ast = cypher::parse(testing::listing_text(n));
    auto table = engine::execute(engine::plan(ast), g);
    Rows rows = shown(table);
    c.check(rows == testing::frozen_rows(n), "listing " + std::to_string(n) + " rows differ from frozen set");
    c.check(rows.size() >= 2, "listing " + std::to_string(n) + " has fewer than 2 positive rows");
  }
  double s = seconds_since(start);
  c.check(s < 1.0, "took " + std::to_string(s) + " s");
  if (c.out.ok) c.out.detail = std::to_string(s) + " s";
  return c.out;
}

Outcome oracle_equivalence() {
  Checker c;
  auto start = Clock::now();
  testing::Rng rng(20260101);
  const int cases = 250;
  int nonempty = 0;
  for (int i = 0; i < cases && c.out.ok; ++i) {
    Graph g = testing::random_climate_graph(rng, 12, 24);
    cypher::QueryAst q = testing::random_query(rng, g, 3);
    auto t = engine::execute(engine::plan(q), g);
    nonempty += !t.rows.empty();
    c.check(testing::bag(t.rows) == testing::bag(testing::oracle_rows(q, g)),
            "case " + std::to_string(i) + ": " + cypher::pretty_print(q));
  }
  double s = seconds_since(start);
  c.check(s < 30.0, "took " + std::to_string(s) + " s");
  c.check(nonempty * 4 >= cases, "only " + std::to_string(nonempty) + " cases returned rows");
  if (c.out.ok) {
    c.out.detail = std::to_string(cases) + " cases, " + std::to_string(nonempty) + " non-empty, " +
                   std::to_string(s) + " s";
  }
  return c.out;
}

Outcome parser_round_trip() {
  Checker c;
  testing::Rng rng(4242);
  const int cases = 600;
  for (int i = 0; i < cases && c.out.ok; ++i) {
    cypher::QueryAst a = testing::random_ast(rng);
    std::string text = cypher::pretty_print(a);
    try {
      c.check(cypher::parse(text) == a, "mismatch: " + text);
    } catch (const std::exception& e) {
      c.check(false, std::string("parse failed: ") + e.what() + " on " + text);
    }
  }
  if (c.out.ok) c.out.detail = std::to_string(cases) + " ASTs";
  return c.out;
}

Outcome desugaring() {
  Checker c;
  testing::Rng rng(9090);
  int checked = 0, nonempty = 0;
  while (checked < 50 && c.out.ok) {
    Graph g = testing::random_climate_graph(rng);
    cypher::QueryAst q = testing::random_query(rng, g);
    if (!testing::has_property_maps(q)) continue;
    auto sugar = engine::execute(engine::plan(q), g);
    auto plain = engine::execute(engine::plan(testing::desugar_property_maps(q)), g);
    c.check(testing::bag(sugar.rows) == testing::bag(plain.rows), cypher::pretty_print(q));
    nonempty += !sugar.rows.empty();
    ++checked;
  }
  if (c.out.ok) c.out.detail = std::to_string(checked) + " cases, " + std::to_string(nonempty) + " non-empty";
  return c.out;
}

Outcome snapshot_round_trip() {
  Checker c;
  testing::Rng rng(777);
  for (int i = 0; i < 30 && c.out.ok; ++i) {
    std::size_t n = i == 0 ? 1000 : rng() % 1001;
    Graph g = testing::random_graph(rng, n, n ? rng() % (2 * n + 1) : 0);
    Graph back = decode_snapshot(encode_snapshot(g));
    c.check(back == g, "random graph " + std::to_string(i) + " differs after round trip");
  }
  Graph f = testing::load_fixture();
  auto bytes = encode_snapshot(f);
  Graph back = decode_snapshot(bytes);
  c.check(back == f, "fixture differs after round trip");
  c.check(encode_snapshot(back) == bytes, "fixture re-save is not byte-identical");
  return c.out;
}

Outcome index_effectiveness() {
  Checker c;
  Graph g;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) g.add_node({"Location"}, {{"Name", "loc-" + std::to_string(i % 50000)}});
  const std::string q = "MATCH (l:Location {Name: \"loc-42\"}) RETURN l.Name AS Name, l";
  auto indexed = engine::run_query(q, g, {true});
  auto scanned = engine::run_query(q, g, {false});
  c.check(indexed.stats.nodes_touched <= 10, "indexed touched " + std::to_string(indexed.stats.nodes_touched));
  c.check(scanned.stats.nodes_touched == n, "scan touched " + std::to_string(scanned.stats.nodes_touched));
  c.check(indexed.rows == scanned.rows, "indexed and scanned rows differ");
  c.check(indexed.rows.size() == 2, "expected 2 rows, got " + std::to_string(indexed.rows.size()));
  if (c.out.ok) {
    c.out.detail = "touched " + std::to_string(indexed.stats.nodes_touched) + " vs " +
                   std::to_string(scanned.stats.nodes_touched);
  }
  return c.out;
}

Outcome ingest_idempotence() {
  Checker c;
  const auto schema = builtin_climate_schema();
  const auto corpus = testing::fixture_corpus_path();

  Graph once = ingest::make_ingest_graph();
  ingest::ingest_file(once, schema, corpus, {false, true});
  Graph twice = once;
  ingest::ingest_file(twice, schema, corpus, {false, true});
  c.check(twice == once, "dedup double ingest changed the graph");
  c.check(encode_snapshot(twice) == encode_snapshot(once), "dedup double ingest changed snapshot bytes");

  Graph plain1 = ingest::make_ingest_graph();
  ingest::ingest_file(plain1, schema, corpus);
  Graph plain2 = plain1;
  ingest::ingest_file(plain2, schema, corpus);
  c.check(plain2.node_count() == plain1.node_count(), "node count changed");
  for (const auto& type : {"TargetsLocation"}) {
    c.check(count_type(plain2, type) == count_type(plain1, type), std::string(type) + " count changed");
  }
  c.check(count_type(plain2, "Mention") == 2 * count_type(plain1, "Mention"), "Mention count did not double");
  c.check(plain2.relationship_count() - plain1.relationship_count() == count_type(plain1, "Mention"),
          "edges other than Mention grew");
  for (NodeId id = 0; id < plain1.node_count(); ++id) {
    c.check(plain2.node(id) == plain1.node(id), "node " + std::to_string(id) + " changed");
  }
  return c.out;
}

Outcome nlq_fidelity() {
  Checker c;
  Graph g = testing::load_fixture();
  nlq::Translator translator;
  for (int n = 1; n <= 3; ++n) {
    auto r = translator.translate(testing::persona_questions()[n - 1], g);
    const auto* t = std::get_if<nlq::Translation>(&r);
    c.check(t != nullptr, "persona question " + std::to_string(n) + " did not match");
    if (t) c.check(t->ast == cypher::parse(testing::listing_text(n)), "AST differs for listing " + std::to_string(n));
  }
  return c.out;
}

Outcome service_parity() {
  Checker c;
  Graph g = testing::load_fixture();
  ServiceOptions opts;
  opts.writable = true;
  testing::RunningService server(g, opts);
  auto client = server.client();
  for (int n = 1; n <= 3; ++n) {
    auto res = client.Post("/api/query", Json{{"query", testing::listing_text(n)}}.dump(), "application/json");
    c.check(res && res->status == 200, "listing " + std::to_string(n) + " request failed");
    if (!res || res->status != 200) continue;
    Json body = Json::parse(res->body);
    auto direct = engine::run_query(testing::listing_text(n), g);
    c.check(shown(body["rows"]) == shown(direct), "listing " + std::to_string(n) + " rows differ from engine");
    c.check(body["columns"] == Json(direct.columns), "listing " + std::to_string(n) + " columns differ");
  }

  // Mention rows before and after a second ingest of the corpus.
  const std::string query = Json{{"query", "MATCH (p:Paper)-[m:Mention]->(x) RETURN p.title AS T"}}.dump();
  const std::size_t before = count_type(g, "Mention");
  const std::size_t after = 2 * before;
  std::atomic<bool> done{false};
  std::atomic<int> partial{0}, failed{0}, old_seen{0}, new_seen{0};
  std::vector<std::thread> readers;
  for (int i = 0; i < 4; ++i) {
    readers.emplace_back([&] {
      auto rc = server.client();
      while (!done.load()) {
        auto res = rc.Post("/api/query", query, "application/json");
        if (!res || res->status != 200) {
          ++failed;
          continue;
        }
        auto rows = Json::parse(res->body)["stats"]["rows_total"].get<std::size_t>();
        if (rows == before) {
          ++old_seen;
        } else if (rows == after) {
          ++new_seen;
        } else {
          ++partial;
        }
      }
    });
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  auto res = client.Post("/api/ingest", testing::read_file(testing::fixture_corpus_path()), "application/x-ndjson");
  c.check(res && res->status == 200, "ingest request failed");
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  done = true;
  for (auto& t : readers) t.join();
  c.check(partial.load() == 0, std::to_string(partial.load()) + " partial-graph row counts observed");
  c.check(failed.load() == 0, std::to_string(failed.load()) + " concurrent queries failed");
  c.check(old_seen.load() > 0, "no query observed the old graph");
  auto final_res = client.Post("/api/query", query, "application/json");
  c.check(final_res && Json::parse(final_res->body)["stats"]["rows_total"] == after, "new graph not published");
  if (c.out.ok) {
    c.out.detail = std::to_string(old_seen.load()) + " old / " + std::to_string(new_seen.load()) + " new";
  }
  return c.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"conformance corpus", conformance},
      {"oracle equivalence", oracle_equivalence},
      {"parser round-trip", parser_round_trip},
      {"desugaring equivalence", desugaring},
      {"snapshot round-trip", snapshot_round_trip},
      {"index effectiveness", index_effectiveness},
      {"ingest idempotence and dedup", ingest_idempotence},
      {"nlq fidelity", nlq_fidelity},
      {"service parity and ingest swap", service_parity},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
