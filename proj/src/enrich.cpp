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

#include "climakg/enrich.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "climakg/error.hpp"

namespace climakg::ingest {

OfflineEnrichment OfflineEnrichment::from_tsv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open enrichment table " + path.string());
  std::map<std::string, std::string> table;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    table[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return OfflineEnrichment(std::move(table));
}

std::optional<std::string> OfflineEnrichment::describe(const std::string& name) {
  auto it = table_.find(name);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::string WikidataClient::endpoint_from_env() {
  const char* env = std::getenv("CLIMAKG_WIKIDATA_ENDPOINT");
  return env && *env ? std::string(env) : std::string(kDefaultEndpoint);
}

WikidataClient::WikidataClient(std::string endpoint) : WikidataClient(std::move(endpoint), Options{}) {}

WikidataClient::WikidataClient(std::string endpoint, Options options)
    : endpoint_(std::move(endpoint)), options_(std::move(options)) {}

std::optional<std::string> WikidataClient::describe(const std::string& name) {
  auto fail = [&](const std::string& why) -> std::optional<std::string> {
    errors_.push_back(name + ": " + why);
    std::clog << "wikidata: " << name << ": " << why << '\n';
    return std::nullopt;
  };

  auto scheme_end = endpoint_.find("://");
  if (scheme_end == std::string::npos) return fail("endpoint must be an absolute URL");
  auto path_start = endpoint_.find('/', scheme_end + 3);
  std::string base = endpoint_.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

  if (last_request_) {
    auto next = *last_request_ + options_.min_interval;
    auto now = std::chrono::steady_clock::now();
    if (now < next) std::this_thread::sleep_for(next - now);
  }
  last_request_ = std::chrono::steady_clock::now();
  ++requests_;

  httplib::Client client(base);
  if (!client.is_valid()) return fail("unsupported endpoint " + base);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_follow_location(true);

  std::string search = name;
  std::replace(search.begin(), search.end(), '_', ' ');
  httplib::Params params{{"action", "wbsearchentities"}, {"search", search},  {"language", options_.language},
                         {"format", "json"},             {"limit", "1"},      {"type", "item"}};
  httplib::Headers headers{{"User-Agent", "climakg/1.0 (location enrichment)"}};
  auto res = client.Get(path, params, headers);
  if (!res) return fail("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) return fail("HTTP " + std::to_string(res->status));

  try {
    auto body = nlohmann::json::parse(res->body);
    const auto& hits = body.at("search");
    if (!hits.is_array() || hits.empty()) return std::nullopt;
    const auto& top = hits.front();
    auto it = top.find("description");
    if (it == top.end() || !it->is_string() || it->get<std::string>().empty()) return std::nullopt;
    return it->get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("unexpected response: ") + e.what());
  }
}

std::size_t enrich_locations(Graph& graph, EnrichmentSource& source) {
  std::size_t count = 0;
  for (NodeId id : graph.nodes_by_label("Location")) {
    const Node& n = graph.node(id);
    if (n.property("wikidata_description")) continue;
    const PropertyValue* name = n.property("Name");
    if (!name || !name->is_text()) continue;
    if (auto desc = source.describe(name->as_text())) {
      graph.set_node_property(id, "wikidata_description", PropertyValue(*desc));
      ++count;
    }
  }
  return count;
}

}  // namespace climakg::ingest
