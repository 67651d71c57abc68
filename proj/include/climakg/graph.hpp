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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "climakg/value.hpp"

namespace climakg {

using NodeId = std::uint64_t;
using RelId = std::uint64_t;

using LabelSet = std::set<std::string>;

struct Node {
  NodeId id = 0;
  LabelSet labels;
  PropertyMap properties;

  bool has_label(const std::string& l) const { return labels.count(l) != 0; }
  const PropertyValue* property(const std::string& key) const {
    auto it = properties.find(key);
    return it == properties.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Node&, const Node&) = default;
};

struct Relationship {
  RelId id = 0;
  std::string type;
  NodeId src = 0;
  NodeId dst = 0;
  PropertyMap properties;

  const PropertyValue* property(const std::string& key) const {
    auto it = properties.find(key);
    return it == properties.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Relationship&, const Relationship&) = default;
};

enum class Direction { Out, In, Both };

struct Neighbor {
  RelId rel;
  NodeId node;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Label and (label, key, text value) lookup tables. Kept as a separate value
/// so a freshly rebuilt copy can be compared against the live one.
struct GraphIndexes {
  std::map<std::string, std::vector<NodeId>> by_label;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<NodeId>> by_property;

  friend bool operator==(const GraphIndexes&, const GraphIndexes&) = default;
};

/// In-memory directed property multigraph.
///
/// Ids are dense and assigned in creation order. Elements are never removed,
/// so an id stays valid for the lifetime of the graph. All mutation happens
/// before the graph is shared; const member functions are safe to call from
/// many threads at once.
class Graph {
 public:
  static std::vector<std::string> default_indexed_keys() { return {"Name", "title"}; }

  Graph() : Graph(default_indexed_keys()) {}
  explicit Graph(std::vector<std::string> indexed_keys);

  NodeId add_node(LabelSet labels, PropertyMap properties = {});
  RelId add_relationship(NodeId src, NodeId dst, std::string type, PropertyMap properties = {});

  /// Overwrites (or adds) one property on an existing node, keeping the
  /// property index in step. Used by ingest merges and enrichment.
  void set_node_property(NodeId id, const std::string& key, PropertyValue value);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t relationship_count() const noexcept { return rels_.size(); }

  bool has_node(NodeId id) const noexcept { return id < nodes_.size(); }
  bool has_relationship(RelId id) const noexcept { return id < rels_.size(); }

  const Node& node(NodeId id) const;
  const Relationship& relationship(RelId id) const;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Relationship>& relationships() const noexcept { return rels_; }

  const std::vector<RelId>& outgoing(NodeId id) const;
  const std::vector<RelId>& incoming(NodeId id) const;

  const std::vector<std::string>& indexed_keys() const noexcept { return indexed_keys_; }
  bool is_indexed_key(const std::string& key) const;

  /// Ascending ids of nodes carrying `label`.
  std::vector<NodeId> nodes_by_label(const std::string& label) const;

  /// Nodes carrying `label` whose `key` equals `value` (variant-strict).
  /// Goes through the property index when `key` is indexed and `value` is
  /// Text; otherwise scans the label. `touched`, when given, is incremented
  /// once per node inspected.
  std::vector<NodeId> nodes_by_label_property(const std::string& label, const std::string& key,
                                              const PropertyValue& value,
                                              std::size_t* touched = nullptr) const;

  /// Same contract as nodes_by_label_property, always scanning.
  std::vector<NodeId> scan_label_property(const std::string& label, const std::string& key,
                                          const PropertyValue& value,
                                          std::size_t* touched = nullptr) const;

  /// Incident edges in insertion order. Both lists outgoing then incoming,
  /// so a self-loop shows up once in each half.
  std::vector<Neighbor> neighbors(NodeId id, Direction dir,
                                  const std::optional<std::string>& rel_type = std::nullopt) const;

  const GraphIndexes& indexes() const noexcept { return indexes_; }
  GraphIndexes rebuild_indexes() const;
  bool indexes_consistent() const { return rebuild_indexes() == indexes_; }

  /// Graph equality: same ids, labels, types, properties and indexed keys.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.rels_ == b.rels_ && a.indexed_keys_ == b.indexed_keys_;
  }

 private:
  void index_node(const Node& n, GraphIndexes& idx) const;

  std::vector<std::string> indexed_keys_;
  std::vector<Node> nodes_;
  std::vector<Relationship> rels_;
  std::vector<std::vector<RelId>> out_;
  std::vector<std::vector<RelId>> in_;
  GraphIndexes indexes_;
};

}  // namespace climakg
