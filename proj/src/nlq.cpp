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

#include "climakg/nlq.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "climakg/aliases_data.hpp"
#include "climakg/cypher.hpp"
#include "climakg/error.hpp"

namespace climakg::nlq {

using namespace cypher;

AliasTable parse_aliases(std::string_view tsv) {
  AliasTable t;
  std::istringstream in{std::string(tsv)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) continue;
    t.entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return t;
}

AliasTable load_aliases(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open alias file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_aliases(ss.str());
}

const AliasTable& builtin_aliases() {
  static const AliasTable table = parse_aliases(detail::kBuiltinAliasTable);
  return table;
}

std::string normalize(std::string_view text) {
  std::string out = " ";
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out += static_cast<char>(std::tolower(u));
    } else if (out.back() != ' ') {
      out += ' ';
    }
  }
  if (out.back() != ' ') out += ' ';
  return out;
}

namespace {

bool has_phrase(const std::string& normalized_text, std::string_view phrase) {
  std::string p = normalize(phrase);
  return p.size() > 2 && normalized_text.find(p) != std::string::npos;
}

constexpr const char* kAnyLabel = "*";

}  // namespace

Gazetteer::Gazetteer(const Graph& graph, const AliasTable& aliases) {
  std::map<std::string, std::set<std::string>> labels_of_name;
  for (const auto& n : graph.nodes()) {
    const PropertyValue* name = n.property("Name");
    if (!name || !name->is_text()) continue;
    for (const auto& l : n.labels) {
      by_label_[l].push_back({normalize(name->as_text()), name->as_text()});
      labels_of_name[name->as_text()].insert(l);
    }
  }
  for (const auto& [alias, canonical] : aliases.entries) {
    auto it = labels_of_name.find(canonical);
    if (it == labels_of_name.end()) {
      by_label_[kAnyLabel].push_back({normalize(alias), canonical});
    } else {
      for (const auto& l : it->second) by_label_[l].push_back({normalize(alias), canonical});
    }
  }
}

std::optional<std::string> Gazetteer::find(const std::string& label, const std::string& normalized_text) const {
  const Entry* best = nullptr;
  for (const char* key : {label.c_str(), kAnyLabel}) {
    auto it = by_label_.find(key);
    if (it == by_label_.end()) continue;
    for (const auto& e : it->second) {
      if (e.surface.size() <= 2 || normalized_text.find(e.surface) == std::string::npos) continue;
      if (!best || e.surface.size() > best->surface.size()) best = &e;
    }
  }
  if (!best) return std::nullopt;
  return best->canonical;
}

namespace {

// ---- AST construction helpers ----

NodePattern node(std::string var, std::vector<std::string> labels = {}, PropMap props = {}) {
  return NodePattern{std::move(var), std::move(labels), std::move(props)};
}

PatternStep out_rel(std::optional<std::string> var, std::string type, NodePattern to) {
  return PatternStep{RelPattern{std::move(var), std::move(type), {}, RelDirection::LeftToRight}, std::move(to)};
}

PathPattern path(NodePattern start, std::vector<PatternStep> steps) {
  return PathPattern{std::move(start), std::move(steps)};
}

MatchClause match(PathPattern p, std::optional<Expr> where = std::nullopt) {
  MatchClause m;
  m.patterns.push_back(std::move(p));
  m.where = std::move(where);
  return m;
}

Expr compare(std::string var, std::string key, CompareOp op, PropertyValue rhs) {
  return Expr{CompareExpr{PropertyAccess{std::move(var), std::move(key)}, op, Literal{std::move(rhs)}}};
}

Expr any_of(std::vector<Expr> xs) {
  if (xs.size() == 1) return std::move(xs.front());
  return Expr{OrExpr{std::move(xs)}};
}

Expr all_of(std::vector<Expr> xs) {
  if (xs.size() == 1) return std::move(xs.front());
  return Expr{AndExpr{std::move(xs)}};
}

Expr paren(Expr e) { return Expr{ParenExpr{std::move(e)}}; }

ReturnItem ret(std::string var, std::string key, std::string alias) {
  return ReturnItem{PropertyAccess{std::move(var), std::move(key)}, std::move(alias)};
}

const std::string& one(const SlotValues& s, const char* name) { return s.at(name).front(); }

// ---- shared vocabularies ----

const KeywordGroup kPapers{"papers", {"papers", "paper", "studies", "study", "articles", "publications", "literature"}};
const KeywordGroup kMention{"mention", {"mention", "mentions", "mentioning", "mentioned", "discuss", "discusses", "discussing"}};

struct SentenceTerm {
  std::string term;  // substring searched in Mention_Sentence
  std::vector<std::string> surfaces;
};

// Output order of the sentence terms follows this table.
const std::vector<SentenceTerm> kTemperatureTerms = {
    {"WW", {"warm waves", "warm wave", "wws", "ww"}},
    {"CAOs", {"cold air outbreaks", "cold air outbreak", "caos", "cao"}},
};

struct Country {
  std::string description;        // substring of wikidata_description
  std::string abbreviation;       // substring of Name
  std::vector<std::string> names;  // exact Name synonyms
  std::vector<std::string> surfaces;
};

const std::vector<Country> kCountries = {
    {"United States", "US", {"USA", "United States of America"},
     {"united states of america", "united states", "usa", "u s a", "u s"}},
};

const std::vector<std::string> kRegions = {"Southeast", "Southwest", "Northeast", "Northwest", "Midwest"};

std::optional<std::vector<std::string>> gazetteer_slot(const SlotContext& ctx, const char* label) {
  if (auto hit = ctx.gazetteer->find(label, ctx.normalized)) return std::vector<std::string>{*hit};
  return std::nullopt;
}

const Country* find_country(const SlotContext& ctx) {
  for (const auto& c : kCountries)
    for (const auto& s : c.surfaces)
      if (has_phrase(ctx.normalized, s)) return &c;
  return nullptr;
}

SlotRule location_slot() {
  return {"location", [](const SlotContext& ctx) { return gazetteer_slot(ctx, "Location"); }};
}

SlotRule teleconnection_slot() {
  return {"teleconnection", [](const SlotContext& ctx) { return gazetteer_slot(ctx, "Teleconnection"); }};
}

QueryTemplate template_t1() {
  QueryTemplate t;
  t.id = "T1";
  t.description = "papers whose mention sentences use temperature-regime terms for events targeting a location";
  t.triggers = {kPapers, kMention,
                {"temperature regime",
                 {"temperature", "temperature regimes", "cold air outbreak", "cold air outbreaks", "warm wave",
                  "warm waves", "caos", "wws"}}};
  t.slots = {location_slot(),
             {"sentence_terms", [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
                std::vector<std::string> terms;
                for (const auto& t : kTemperatureTerms) {
                  for (const auto& s : t.surfaces) {
                    if (has_phrase(ctx.normalized, s)) {
                      terms.push_back(t.term);
                      break;
                    }
                  }
                }
                if (terms.empty()) return std::nullopt;
                return terms;
              }}};
  t.build = [](const SlotValues& s) {
    QueryAst q;
    q.clauses.push_back(match(path(node("we", {"Weather_Event"}),
                                   {out_rel(std::nullopt, "TargetsLocation",
                                            node("l", {"Location"}, {{"Name", PropertyValue(one(s, "location"))}}))})));
    std::vector<Expr> terms;
    for (const auto& term : s.at("sentence_terms"))
      terms.push_back(compare("m", "Mention_Sentence", CompareOp::Contains, PropertyValue(term)));
    Expr where = terms.size() == 1 ? std::move(terms.front()) : paren(any_of(std::move(terms)));
    q.clauses.push_back(match(path(node("p", {"Paper"}), {out_rel("m", "Mention", node("we"))}), std::move(where)));
    q.return_clause.items = {ret("p", "title", "PaperTitle"), ret("l", "Name", "Location"),
                             ret("we", "Name", "WeatherEvent"), ret("m", "Mention_Sentence", "Context")};
    return q;
  };
  return t;
}

QueryTemplate template_t2() {
  QueryTemplate t;
  t.id = "T2";
  t.description = "papers mentioning a model generation and a teleconnection in a regional context";
  t.triggers = {kPapers, kMention, {"model generation", {"model", "models", "cmip"}}};
  t.slots = {
      {"model_substring",
       [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
         static const std::regex cmip(R"(\b[Cc][Mm][Ii][Pp]\s*-?\s*(\d+)\b)");
         std::cmatch m;
         std::string text(ctx.text);
         if (std::regex_search(text.c_str(), m, cmip)) return std::vector<std::string>{"CMIP" + m[1].str()};
         if (auto hit = gazetteer_slot(ctx, "Model")) return hit;
         return gazetteer_slot(ctx, "Project");
       }},
      teleconnection_slot(),
      {"region_substring",
       [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
         for (const auto& r : kRegions)
           if (has_phrase(ctx.normalized, r)) return std::vector<std::string>{r};
         return std::nullopt;
       }},
      {"country_substring", [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
         if (const Country* c = find_country(ctx)) return std::vector<std::string>{c->description, c->abbreviation};
         return std::nullopt;
       }}};
  t.build = [](const SlotValues& s) {
    QueryAst q;
    q.clauses.push_back(match(path(node("p", {"Paper"}), {out_rel(std::nullopt, "Mention", node("mod", {"Model", "Project"}))}),
                              compare("mod", "Name", CompareOp::Contains, PropertyValue(one(s, "model_substring")))));
    q.clauses.push_back(match(path(node("p"), {out_rel(std::nullopt, "Mention",
                                                       node("tel", {"Teleconnection"},
                                                            {{"Name", PropertyValue(one(s, "teleconnection"))}}))})));
    const auto& country = s.at("country_substring");
    std::vector<Expr> region;
    region.push_back(compare("loc", "Name", CompareOp::Contains, PropertyValue(one(s, "region_substring"))));
    region.push_back(paren(any_of({compare("loc", "wikidata_description", CompareOp::Contains, PropertyValue(country.at(0))),
                                   compare("loc", "Name", CompareOp::Contains, PropertyValue(country.at(1)))})));
    q.clauses.push_back(match(path(node("p"), {out_rel(std::nullopt, "Mention", node("loc", {"Location"}))}),
                              all_of(std::move(region))));
    q.return_clause.items = {ret("p", "title", "PaperTitle"), ret("mod", "Name", "ModelProject"),
                             ret("tel", "Name", "Teleconnection"), ret("loc", "Name", "Region")};
    return q;
  };
  return t;
}

QueryTemplate template_t3() {
  QueryTemplate t;
  t.id = "T3";
  t.description = "papers mentioning a teleconnection pattern together with locations it targets in a country";
  t.triggers = {kPapers,
                kMention,
                {"teleconnection pattern",
                 {"pattern", "patterns", "teleconnection", "teleconnections", "oscillation", "oscillations"}},
                {"locations", {"location", "locations", "places", "regions", "areas"}}};
  t.slots = {teleconnection_slot(),
             {"country_names", [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
                if (const Country* c = find_country(ctx)) return c->names;
                return std::nullopt;
              }},
             {"country_description", [](const SlotContext& ctx) -> std::optional<std::vector<std::string>> {
                if (const Country* c = find_country(ctx)) return std::vector<std::string>{c->description};
                return std::nullopt;
              }}};
  t.build = [](const SlotValues& s) {
    QueryAst q;
    q.clauses.push_back(match(path(node("p", {"Paper"}),
                                   {out_rel(std::nullopt, "Mention",
                                            node("t", {"Teleconnection"}, {{"Name", PropertyValue(one(s, "teleconnection"))}}))})));
    q.clauses.push_back(match(path(node("t"), {out_rel(std::nullopt, "TargetsLocation", node("l", {"Location"}))})));
    q.clauses.push_back(match(
        path(node("p"), {out_rel(std::nullopt, "Mention", node("l"))}),
        any_of({compare("l", "wikidata_description", CompareOp::Contains, PropertyValue(one(s, "country_description"))),
                compare("l", "Name", CompareOp::In, PropertyValue(s.at("country_names")))})));
    q.return_clause.items = {ret("p", "title", "PaperTitle"), ret("t", "Name", "TeleconnectionPattern"),
                             ret("l", "Name", "Location")};
    return q;
  };
  return t;
}

}  // namespace

std::vector<QueryTemplate> builtin_templates() { return {template_t1(), template_t2(), template_t3()}; }

TranslateResult translate(std::string_view text, const std::vector<QueryTemplate>& templates, const Graph& graph,
                          const AliasTable& aliases) {
  Gazetteer gaz(graph, aliases);
  SlotContext ctx{text, normalize(text), &gaz};
  NoMatch miss;
  for (const auto& t : templates) {
    bool ok = true;
    for (const auto& group : t.triggers) {
      bool hit = std::any_of(group.synonyms.begin(), group.synonyms.end(),
                             [&](const std::string& s) { return has_phrase(ctx.normalized, s); });
      if (!hit) {
        miss.reasons.push_back(t.id + ": unmet trigger group '" + group.name + "'");
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    SlotValues values;
    for (const auto& slot : t.slots) {
      auto v = slot.extract(ctx);
      if (!v) {
        miss.reasons.push_back(t.id + ": could not fill slot '" + slot.name + "'");
        ok = false;
        break;
      }
      values[slot.name] = std::move(*v);
    }
    if (!ok) continue;

    Translation tr;
    tr.template_id = t.id;
    tr.ast = t.build(values);
    tr.slots = std::move(values);
    tr.canonical_text = pretty_print(tr.ast);
    if (!(parse(tr.canonical_text) == tr.ast)) {
      throw Error("template " + t.id + " produced an AST that does not survive printing");
    }
    return tr;
  }
  return miss;
}

Translator::Translator() : Translator(builtin_templates(), builtin_aliases()) {}

Translator::Translator(std::vector<QueryTemplate> templates, AliasTable aliases)
    : templates_(std::move(templates)), aliases_(std::move(aliases)) {}

TranslateResult Translator::translate(std::string_view text, const Graph& graph) const {
  TranslateResult r = nlq::translate(text, templates_, graph, aliases_);
  if (std::holds_alternative<Translation>(r) || !external_) return r;
  std::string cypher_text = external_(text);
  Translation tr;
  tr.template_id = "external";
  tr.ast = parse(cypher_text);  // throws on anything outside the subset
  tr.canonical_text = pretty_print(tr.ast);
  return tr;
}

}  // namespace climakg::nlq
