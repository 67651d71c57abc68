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

#include "climakg/graph.hpp"

#include <algorithm>

#include "climakg/error.hpp"

namespace climakg {

Graph::Graph(std::vector<std::string> indexed_keys) : indexed_keys_(std::move(indexed_keys)) {
  std::sort(indexed_keys_.begin(), indexed_keys_.end());
  indexed_keys_.erase(std::unique(indexed_keys_.begin(), indexed_keys_.end()), indexed_keys_.end());
}

bool Graph::is_indexed_key(const std::string& key) const {
  return std::binary_search(indexed_keys_.begin(), indexed_keys_.end(), key);
}

void Graph::index_node(const Node& n, GraphIndexes& idx) const {
  for (const auto& label : n.labels) {
    idx.by_label[label].push_back(n.id);
    for (const auto& key : indexed_keys_) {
      const PropertyValue* v = n.property(key);
      if (v && v->is_text()) idx.by_property[{label, key, v->as_text()}].push_back(n.id);
    }
  }
}

NodeId Graph::add_node(LabelSet labels, PropertyMap properties) {
  if (labels.empty()) throw EmptyLabelSet();
  Node n;
  n.id = nodes_.size();
  n.labels = std::move(labels);
  n.properties = std::move(properties);
  index_node(n, indexes_);
  nodes_.push_back(std::move(n));
  out_.emplace_back();
  in_.emplace_back();
  return nodes_.back().id;
}

RelId Graph::add_relationship(NodeId src, NodeId dst, std::string type, PropertyMap properties) {
  if (!has_node(src)) throw UnknownNode(src);
  if (!has_node(dst)) throw UnknownNode(dst);
  Relationship r;
  r.id = rels_.size();
  r.type = std::move(type);
  r.src = src;
  r.dst = dst;
  r.properties = std::move(properties);
  out_[src].push_back(r.id);
  in_[dst].push_back(r.id);
  rels_.push_back(std::move(r));
  return rels_.back().id;
}

void Graph::set_node_property(NodeId id, const std::string& key, PropertyValue value) {
  if (!has_node(id)) throw UnknownNode(id);
  Node& n = nodes_[id];
  if (is_indexed_key(key)) {
    if (const PropertyValue* old = n.property(key); old && old->is_text()) {
      for (const auto& label : n.labels) {
        auto it = indexes_.by_property.find({label, key, old->as_text()});
        if (it == indexes_.by_property.end()) continue;
        auto& ids = it->second;
        ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
        if (ids.empty()) indexes_.by_property.erase(it);
      }
    }
    if (value.is_text()) {
      for (const auto& label : n.labels) {
        auto& ids = indexes_.by_property[{label, key, value.as_text()}];
        ids.insert(std::lower_bound(ids.begin(), ids.end(), id), id);
      }
    }
  }
  n.properties[key] = std::move(value);
}

const Node& Graph::node(NodeId id) const {
  if (!has_node(id)) throw UnknownNode(id);
  return nodes_[id];
}

const Relationship& Graph::relationship(RelId id) const {
  if (!has_relationship(id)) throw UnknownRelationship(id);
  return rels_[id];
}

const std::vector<RelId>& Graph::outgoing(NodeId id) const {
  if (!has_node(id)) throw UnknownNode(id);
  return out_[id];
}

const std::vector<RelId>& Graph::incoming(NodeId id) const {
  if (!has_node(id)) throw UnknownNode(id);
  return in_[id];
}

std::vector<NodeId> Graph::nodes_by_label(const std::string& label) const {
  auto it = indexes_.by_label.find(label);
  if (it == indexes_.by_label.end()) return {};
  return it->second;
}

std::vector<NodeId> Graph::nodes_by_label_property(const std::string& label, const std::string& key,
                                                   const PropertyValue& value,
                                                   std::size_t* touched) const {
  if (!value.is_text() || !is_indexed_key(key)) return scan_label_property(label, key, value, touched);
  auto it = indexes_.by_property.find({label, key, value.as_text()});
  if (it == indexes_.by_property.end()) return {};
  if (touched) *touched += it->second.size();
  return it->second;
}

std::vector<NodeId> Graph::scan_label_property(const std::string& label, const std::string& key,
                                               const PropertyValue& value,
                                               std::size_t* touched) const {
  std::vector<NodeId> out;
  auto it = indexes_.by_label.find(label);
  if (it == indexes_.by_label.end()) return out;
  for (NodeId id : it->second) {
    if (touched) ++*touched;
    const PropertyValue* v = nodes_[id].property(key);
    if (v && *v == value) out.push_back(id);
  }
  return out;
}

std::vector<Neighbor> Graph::neighbors(NodeId id, Direction dir,
                                       const std::optional<std::string>& rel_type) const {
  if (!has_node(id)) throw UnknownNode(id);
  std::vector<Neighbor> out;
  auto matches = [&](const Relationship& r) { return !rel_type || r.type == *rel_type; };
  if (dir == Direction::Out || dir == Direction::Both) {
    for (RelId r : out_[id])
      if (matches(rels_[r])) out.push_back({r, rels_[r].dst});
  }
  if (dir == Direction::In || dir == Direction::Both) {
    for (RelId r : in_[id])
      if (matches(rels_[r])) out.push_back({r, rels_[r].src});
  }
  return out;
}

GraphIndexes Graph::rebuild_indexes() const {
  GraphIndexes idx;
  for (const auto& n : nodes_) index_node(n, idx);
  return idx;
}

}  // namespace climakg
