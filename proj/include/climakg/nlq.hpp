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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "climakg/cypher_ast.hpp"
#include "climakg/graph.hpp"

namespace climakg::nlq {

/// alias -> canonical entity Name, in file order.
struct AliasTable {
  std::vector<std::pair<std::string, std::string>> entries;
};

/// `alias<TAB>canonical_name` lines; `#` comments and blank lines skipped.
AliasTable parse_aliases(std::string_view tsv);
AliasTable load_aliases(const std::filesystem::path& path);
/// The checked-in data/aliases.tsv, compiled in.
const AliasTable& builtin_aliases();

/// Lower-cases, turns every non-alphanumeric byte into a space, collapses
/// runs of spaces, and pads with one space on each side so phrase lookups
/// can test word boundaries with a plain substring search.
std::string normalize(std::string_view text);

/// All synonyms of a group are alternatives; at least one must occur.
struct KeywordGroup {
  std::string name;
  std::vector<std::string> synonyms;
};

using SlotValues = std::map<std::string, std::vector<std::string>>;

/// Surface-form lookup of entity Names per label, built from the graph plus
/// the alias table.
class Gazetteer {
 public:
  Gazetteer(const Graph& graph, const AliasTable& aliases);

  /// Canonical Name of the longest-surface entity of `label` found in the
  /// normalized text. An alias qualifies when its canonical Name is a node of
  /// `label` in the graph, or is not a node Name in the graph at all.
  std::optional<std::string> find(const std::string& label, const std::string& normalized_text) const;

 private:
  struct Entry {
    std::string surface;  // normalized
    std::string canonical;
  };
  std::map<std::string, std::vector<Entry>> by_label_;
};

struct SlotContext {
  std::string_view text;       // original
  std::string normalized;      // normalize(text)
  const Gazetteer* gazetteer;  // never null
};

struct SlotRule {
  std::string name;
  std::function<std::optional<std::vector<std::string>>(const SlotContext&)> extract;
};

struct QueryTemplate {
  std::string id;
  std::string description;
  std::vector<KeywordGroup> triggers;
  std::vector<SlotRule> slots;
  std::function<cypher::QueryAst(const SlotValues&)> build;
};

struct Translation {
  std::string template_id;
  SlotValues slots;
  cypher::QueryAst ast;
  std::string canonical_text;
};

struct NoMatch {
  std::vector<std::string> reasons;
};

using TranslateResult = std::variant<Translation, NoMatch>;

/// T1 event terms in mention sentences at a location, T2 model generation
/// with a teleconnection in a region, T3 teleconnection targets in a country.
std::vector<QueryTemplate> builtin_templates();

/// First template (in order) whose keyword groups all hit and whose slots
/// all fill. Keyword groups match case-insensitively on word boundaries.
TranslateResult translate(std::string_view text, const std::vector<QueryTemplate>& templates, const Graph& graph,
                          const AliasTable& aliases = builtin_aliases());

/// Free-form text -> Cypher text, e.g. a language-model client. Whatever it
/// returns is re-parsed before anything runs.
using ExternalTranslator = std::function<std::string(std::string_view)>;

class Translator {
 public:
  Translator();
  Translator(std::vector<QueryTemplate> templates, AliasTable aliases);

  void set_external(ExternalTranslator external) { external_ = std::move(external); }
  bool has_external() const noexcept { return static_cast<bool>(external_); }

  /// Templates first; on NoMatch, the external translator when registered.
  /// External output that fails to parse throws cypher::ParseError.
  TranslateResult translate(std::string_view text, const Graph& graph) const;

  const std::vector<QueryTemplate>& templates() const noexcept { return templates_; }

 private:
  std::vector<QueryTemplate> templates_;
  AliasTable aliases_;
  ExternalTranslator external_;
};

}  // namespace climakg::nlq
