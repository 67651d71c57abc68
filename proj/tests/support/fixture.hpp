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

#include <filesystem>
#include <string>
#include <vector>

#include "climakg/graph.hpp"

namespace climakg::testing {

std::filesystem::path data_dir();
std::filesystem::path fixture_corpus_path();

/// Fixture corpus ingested with the built-in schema.
Graph load_fixture();

/// Text of data/queries/listing<n>.cypher, line breaks included. n in 1..3.
std::string listing_text(int n);

/// Persona questions in listing order.
const std::vector<std::string>& persona_questions();

/// Expected rows per listing, as display strings, sorted. Frozen from the
/// reference evaluator over the fixture corpus.
const std::vector<std::vector<std::string>>& frozen_rows(int n);

std::string read_file(const std::filesystem::path& p);

}  // namespace climakg::testing
