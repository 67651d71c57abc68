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

#include <gtest/gtest.h>

#include <httplib.h>

#include <mutex>
#include <thread>

#include "climakg/enrich.hpp"
#include "climakg/error.hpp"
#include "fixture.hpp"

namespace climakg::ingest {
namespace {

TEST(Enrich, OfflineMapFillsMissingDescription) {
  Graph g;
  NodeId usa = g.add_node({"Location"}, {{"Name", "USA"}});
  OfflineEnrichment source(std::map<std::string, std::string>{{"USA", "country in North America"}});
  EXPECT_EQ(enrich_locations(g, source), 1u);
  EXPECT_EQ(g.node(usa).property("wikidata_description")->as_text(), "country in North America");
}

TEST(Enrich, ExistingDescriptionNeverOverwritten) {
  Graph g;
  NodeId n = g.add_node({"Location"}, {{"Name", "USA"}, {"wikidata_description", "kept"}});
  OfflineEnrichment source(std::map<std::string, std::string>{{"USA", "replacement"}});
  EXPECT_EQ(enrich_locations(g, source), 0u);
  EXPECT_EQ(g.node(n).property("wikidata_description")->as_text(), "kept");
}

TEST(Enrich, UnknownNameLeftAlone) {
  Graph g;
  NodeId n = g.add_node({"Location"}, {{"Name", "Atlantis"}});
  g.add_node({"Paper"}, {{"Name", "USA"}});
  OfflineEnrichment source(std::map<std::string, std::string>{{"USA", "country"}});
  EXPECT_EQ(enrich_locations(g, source), 0u);
  EXPECT_EQ(g.node(n).property("wikidata_description"), nullptr);
  EXPECT_EQ(g.node(1).property("wikidata_description"), nullptr);
}

TEST(Enrich, CheckedInTableOnFixture) {
  Graph g = testing::load_fixture();
  auto source = OfflineEnrichment::from_tsv(testing::data_dir() / "wikidata_offline.tsv");
  EXPECT_EQ(enrich_locations(g, source), 3u);
  auto usa = g.nodes_by_label_property("Location", "Name", PropertyValue("USA"));
  EXPECT_EQ(g.node(usa.at(0)).property("wikidata_description")->as_text(), "country in North America");
  EXPECT_TRUE(g.indexes_consistent());
  EXPECT_THROW(OfflineEnrichment::from_tsv("/nonexistent.tsv"), IoFailure);
}

// Local stand-in for the entity-search API.
class MockWikidata {
 public:
  MockWikidata() {
    server_.Get("/w/api.php", [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard<std::mutex> lock(mu_);
        arrivals_.push_back(std::chrono::steady_clock::now());
        queries_.push_back(req.get_param_value("search"));
        actions_.push_back(req.get_param_value("action"));
      }
      std::string q = req.get_param_value("search");
      if (q == "Broken") {
        res.status = 500;
        return;
      }
      if (q == "Garbage") {
        res.set_content("not json", "application/json");
        return;
      }
      if (q == "Nowhere") {
        res.set_content(R"({"search":[]})", "application/json");
        return;
      }
      res.set_content(R"({"search":[{"id":"Q30","description":"top hit for )" + q +
                          R"("},{"id":"Q1","description":"second"}]})",
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockWikidata() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/w/api.php"; }
  std::vector<std::chrono::steady_clock::time_point> arrivals() {
    std::lock_guard<std::mutex> lock(mu_);
    return arrivals_;
  }
  std::vector<std::string> queries() {
    std::lock_guard<std::mutex> lock(mu_);
    return queries_;
  }
  std::vector<std::string> actions() {
    std::lock_guard<std::mutex> lock(mu_);
    return actions_;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex mu_;
  std::vector<std::chrono::steady_clock::time_point> arrivals_;
  std::vector<std::string> queries_;
  std::vector<std::string> actions_;
};

TEST(WikidataClient, TakesTopHitDescription) {
  MockWikidata mock;
  WikidataClient client(mock.endpoint());
  EXPECT_EQ(client.describe("NORTH_AMERICA"), "top hit for NORTH AMERICA");
  EXPECT_EQ(mock.queries(), std::vector<std::string>{"NORTH AMERICA"});
  EXPECT_EQ(mock.actions(), std::vector<std::string>{"wbsearchentities"});
}

TEST(WikidataClient, RateLimited) {
  MockWikidata mock;
  WikidataClient client(mock.endpoint());
  auto start = std::chrono::steady_clock::now();
  for (const char* n : {"a", "b", "c", "d"}) client.describe(n);
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_GE(elapsed, std::chrono::milliseconds(600));
  auto arrivals = mock.arrivals();
  ASSERT_EQ(arrivals.size(), 4u);
  for (std::size_t i = 1; i < arrivals.size(); ++i)
    EXPECT_GE(arrivals[i] - arrivals[i - 1], std::chrono::milliseconds(190));
}

TEST(WikidataClient, ErrorsAreLoggedNotFatal) {
  MockWikidata mock;
  WikidataClient client(mock.endpoint(), {std::chrono::milliseconds(1), std::chrono::milliseconds(2000), "en"});
  Graph g;
  g.add_node({"Location"}, {{"Name", "Broken"}});
  g.add_node({"Location"}, {{"Name", "Garbage"}});
  g.add_node({"Location"}, {{"Name", "Nowhere"}});
  NodeId ok = g.add_node({"Location"}, {{"Name", "USA"}});
  EXPECT_EQ(enrich_locations(g, client), 1u);
  EXPECT_EQ(g.node(ok).property("wikidata_description")->as_text(), "top hit for USA");
  EXPECT_EQ(client.errors().size(), 2u);
  EXPECT_EQ(client.requests_sent(), 4u);
}

TEST(WikidataClient, UnreachableEndpoint) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  WikidataClient client("http://127.0.0.1:" + std::to_string(port) + "/w/api.php",
                        {std::chrono::milliseconds(1), std::chrono::milliseconds(500), "en"});
  EXPECT_EQ(client.describe("USA"), std::nullopt);
  EXPECT_EQ(client.errors().size(), 1u);
}

TEST(WikidataClient, EndpointFromEnvironment) {
  ::setenv("CLIMAKG_WIKIDATA_ENDPOINT", "http://example.invalid/api", 1);
  EXPECT_EQ(WikidataClient::endpoint_from_env(), "http://example.invalid/api");
  ::unsetenv("CLIMAKG_WIKIDATA_ENDPOINT");
  EXPECT_EQ(WikidataClient::endpoint_from_env(), WikidataClient::kDefaultEndpoint);
}

}  // namespace
}  // namespace climakg::ingest
