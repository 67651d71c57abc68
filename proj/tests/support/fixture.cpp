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

#include "fixture.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "climakg/ingest.hpp"
#include "climakg/schema.hpp"

namespace climakg::testing {

std::filesystem::path data_dir() { return std::filesystem::path(CLIMAKG_SOURCE_DIR) / "data"; }

std::filesystem::path fixture_corpus_path() { return data_dir() / "fixture_corpus.ndjson"; }

Graph load_fixture() {
  Graph g = ingest::make_ingest_graph();
  auto stats = ingest::ingest_file(g, builtin_climate_schema(), fixture_corpus_path());
  if (stats.errors() != 0) throw std::runtime_error("fixture corpus did not ingest cleanly");
  return g;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string listing_text(int n) { return read_file(data_dir() / "queries" / ("listing" + std::to_string(n) + ".cypher")); }

const std::vector<std::string>& persona_questions() {
  static const std::vector<std::string> q = {
      "Which papers mention anomalous temperature regimes such as cold air outbreaks (CAOs) or warm waves (WWs) in "
      "relation to North America, specifically in the sentences where these terms appear?",
      "Which papers mention CMIP5 models and the North Atlantic Oscillation (NAO) in the context of the Southeast "
      "United States?",
      "Which papers mention the Pacific-North American (PNA) pattern in connection with locations in the United "
      "States?",
  };
  return q;
}

const std::vector<std::vector<std::string>>& frozen_rows(int n) {
  static const std::vector<std::vector<std::vector<std::string>>> rows = {
      {
          {"Arctic amplification and mid-latitude weather", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "Links between Arctic warming and CAOs remain debated."},
          {"Cold air outbreaks over the central United States", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "CAOs hit the Midwest in January 2014."},
          {"Cold air outbreaks over the central United States", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "Recurrent CAOs swept North America during the polar vortex event."},
          {"Drought persistence on the Great Plains", "NORTH_AMERICA", "DROUGHT", "Multi-year droughts follow WW summers."},
          {"European heat extremes", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "The CAOs analysed here affect Scandinavia."},
          {"PNA influence on winter temperature in the USA", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "CAOs follow positive PNA phases."},
          {"Temperature regime shifts in a warming climate", "NORTH_AMERICA", "COLD_AIR_OUTBREAK", "Both WW and CAOs are projected to change in frequency."},
          {"Temperature regime shifts in a warming climate", "NORTH_AMERICA", "WARM_WAVE", "Both WW and CAOs are projected to change in frequency."},
          {"Warm waves and winter snowpack", "NORTH_AMERICA", "WARM_WAVE", "Persistent WW episodes reduced snow cover."},
      },
      {
          {"CMIP5 simulations of the NAO and Southeast US rainfall", "CMIP5", "NORTH_ATLANTIC_OSCILLATION", "Southeast US"},
          {"CMIP5 simulations of the NAO and Southeast US rainfall", "CMIP5-ESM", "NORTH_ATLANTIC_OSCILLATION", "Southeast US"},
          {"Earth system model skill for Atlantic variability", "CMIP5-ESM", "NORTH_ATLANTIC_OSCILLATION", "Southeast United States"},
      },
      {
          {"Alaskan storms and the Pacific-North American pattern", "PACIFIC_NORTH_AMERICAN_PNA_PATTERN", "Alaska"},
          {"PNA influence on winter temperature in the USA", "PACIFIC_NORTH_AMERICAN_PNA_PATTERN", "USA"},
          {"Teleconnection drivers of United States climate extremes", "PACIFIC_NORTH_AMERICAN_PNA_PATTERN", "United States of America"},
          {"Teleconnection drivers of United States climate extremes", "PACIFIC_NORTH_AMERICAN_PNA_PATTERN", "United States of America"},
      },
  };
  return rows.at(static_cast<std::size_t>(n - 1));
}

}  // namespace climakg::testing
