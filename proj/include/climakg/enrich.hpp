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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "climakg/graph.hpp"

namespace climakg::ingest {

/// Resolves a location name to a short linked-data description.
class EnrichmentSource {
 public:
  virtual ~EnrichmentSource() = default;
  virtual std::optional<std::string> describe(const std::string& name) = 0;
};

/// Fixed name -> description map; used for hermetic runs.
class OfflineEnrichment : public EnrichmentSource {
 public:
  OfflineEnrichment() = default;
  explicit OfflineEnrichment(std::map<std::string, std::string> table) : table_(std::move(table)) {}

  /// `name<TAB>description` lines; `#` comments and blank lines skipped.
  static OfflineEnrichment from_tsv(const std::filesystem::path& path);

  std::optional<std::string> describe(const std::string& name) override;

 private:
  std::map<std::string, std::string> table_;
};

/// Wikidata entity-search client (wbsearchentities). Takes the top-ranked
/// hit's description. Requests are spaced by at least `min_interval`; every
/// failure is recorded in errors() and reported as "no description".
class WikidataClient : public EnrichmentSource {
 public:
  struct Options {
    std::chrono::milliseconds min_interval{200};
    std::chrono::milliseconds timeout{5000};
    std::string language = "en";
  };

  static constexpr const char* kDefaultEndpoint = "https://www.wikidata.org/w/api.php";

  /// CLIMAKG_WIKIDATA_ENDPOINT when set, else kDefaultEndpoint.
  static std::string endpoint_from_env();

  explicit WikidataClient(std::string endpoint = endpoint_from_env());
  WikidataClient(std::string endpoint, Options options);

  std::optional<std::string> describe(const std::string& name) override;

  const std::vector<std::string>& errors() const noexcept { return errors_; }
  std::size_t requests_sent() const noexcept { return requests_; }

 private:
  std::string endpoint_;
  Options options_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
  std::vector<std::string> errors_;
  std::size_t requests_ = 0;
};

/// Sets wikidata_description on every Location node that lacks one and
/// whose Name the source resolves. Never overwrites. Returns the count set.
std::size_t enrich_locations(Graph& graph, EnrichmentSource& source);

}  // namespace climakg::ingest
