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

#include "climakg/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <unordered_map>

#include "climakg/error.hpp"

namespace climakg {
namespace {

constexpr char kMagic[4] = {'C', 'K', 'G', '1'};

enum SectionTag : std::uint8_t { kStrings = 1, kNodes = 2, kRels = 3, kIndexedKeys = 4 };

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void bytes(const void* p, std::size_t n) {
    auto* b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  void section(std::uint8_t tag, const Writer& payload) {
    u8(tag);
    u64(payload.buf_.size());
    buf_.insert(buf_.end(), payload.buf_.begin(), payload.buf_.end());
  }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

class StringTable {
 public:
  std::uint32_t intern(const std::string& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<std::uint32_t>(strings_.size()));
    if (inserted) strings_.push_back(&it->first);
    return it->second;
  }
  void write(Writer& w) const {
    w.u32(static_cast<std::uint32_t>(strings_.size()));
    for (const auto* s : strings_) {
      w.u32(static_cast<std::uint32_t>(s->size()));
      w.bytes(s->data(), s->size());
    }
  }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<const std::string*> strings_;
};

void write_value(Writer& w, StringTable& st, const PropertyValue& v) {
  w.u8(static_cast<std::uint8_t>(v.kind()));
  switch (v.kind()) {
    case PropertyValue::Kind::Text: w.u32(st.intern(v.as_text())); break;
    case PropertyValue::Kind::Int: w.u64(static_cast<std::uint64_t>(v.as_int())); break;
    case PropertyValue::Kind::Real: w.u64(std::bit_cast<std::uint64_t>(v.as_real())); break;
    case PropertyValue::Kind::Bool: w.u8(v.as_bool() ? 1 : 0); break;
    case PropertyValue::Kind::TextList:
      w.u32(static_cast<std::uint32_t>(v.as_text_list().size()));
      for (const auto& s : v.as_text_list()) w.u32(st.intern(s));
      break;
  }
}

void write_props(Writer& w, StringTable& st, const PropertyMap& props) {
  w.u32(static_cast<std::uint32_t>(props.size()));
  for (const auto& [k, v] : props) {
    w.u32(st.intern(k));
    write_value(w, st, v);
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == b_.size(); }

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(b_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw CorruptSnapshot(pos_, "truncated input");
  }

 private:
  std::uint64_t le(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{b_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

class Decoder {
 public:
  explicit Decoder(std::span<const std::uint8_t> bytes) : r_(bytes) {}

  Graph run() {
    if (!has_header()) {
      throw FormatVersionMismatch("not a climakg snapshot (bad magic)");
    }
    std::uint16_t version = r_.u16();
    if (version != kSnapshotVersion) {
      throw FormatVersionMismatch("unsupported snapshot version " + std::to_string(version));
    }

    section(kStrings);
    std::uint32_t nstrings = r_.u32();
    strings_.reserve(nstrings);
    for (std::uint32_t i = 0; i < nstrings; ++i) strings_.push_back(r_.str(r_.u32()));
    end_section();

    section(kNodes);
    std::uint64_t nnodes = r_.u64();
    std::vector<std::pair<LabelSet, PropertyMap>> nodes;
    for (std::uint64_t i = 0; i < nnodes; ++i) {
      std::size_t at = r_.offset();
      LabelSet labels;
      std::uint32_t nlabels = r_.u32();
      for (std::uint32_t j = 0; j < nlabels; ++j) labels.insert(string_ref());
      if (labels.empty()) throw CorruptSnapshot(at, "node without labels");
      PropertyMap props = read_props();
      nodes.emplace_back(std::move(labels), std::move(props));
    }
    end_section();

    section(kRels);
    struct RawRel {
      std::string type;
      NodeId src, dst;
      PropertyMap props;
      std::size_t at;
    };
    std::vector<RawRel> rels;
    std::uint64_t nrels = r_.u64();
    for (std::uint64_t i = 0; i < nrels; ++i) {
      RawRel rr;
      rr.at = r_.offset();
      rr.type = string_ref();
      rr.src = r_.u64();
      rr.dst = r_.u64();
      rr.props = read_props();
      if (rr.src >= nnodes || rr.dst >= nnodes) throw CorruptSnapshot(rr.at, "dangling endpoint");
      rels.push_back(std::move(rr));
    }
    end_section();

    section(kIndexedKeys);
    std::vector<std::string> keys;
    std::uint32_t nkeys = r_.u32();
    for (std::uint32_t i = 0; i < nkeys; ++i) keys.push_back(string_ref());
    end_section();

    if (!r_.at_end()) throw CorruptSnapshot(r_.offset(), "trailing bytes");

    Graph g(std::move(keys));
    for (auto& [labels, props] : nodes) g.add_node(std::move(labels), std::move(props));
    for (auto& rr : rels) g.add_relationship(rr.src, rr.dst, std::move(rr.type), std::move(rr.props));
    return g;
  }

 private:
  bool has_header() {
    try {
      return r_.str(4) == std::string(kMagic, 4);
    } catch (const CorruptSnapshot&) {
      return false;
    }
  }

  void section(std::uint8_t tag) {
    std::size_t at = r_.offset();
    if (r_.u8() != tag) throw CorruptSnapshot(at, "unexpected section tag");
    std::uint64_t len = r_.u64();
    r_.need(len);
    section_end_ = r_.offset() + len;
  }

  void end_section() {
    if (r_.offset() != section_end_) throw CorruptSnapshot(r_.offset(), "section length mismatch");
  }

  const std::string& string_ref() {
    std::size_t at = r_.offset();
    std::uint32_t id = r_.u32();
    if (id >= strings_.size()) throw CorruptSnapshot(at, "string reference out of range");
    return strings_[id];
  }

  PropertyValue read_value() {
    std::size_t at = r_.offset();
    switch (r_.u8()) {
      case 0: return PropertyValue(string_ref());
      case 1: return PropertyValue(static_cast<std::int64_t>(r_.u64()));
      case 2: return PropertyValue(std::bit_cast<double>(r_.u64()));
      case 3: {
        std::uint8_t b = r_.u8();
        if (b > 1) throw CorruptSnapshot(at + 1, "bad boolean");
        return PropertyValue(b == 1);
      }
      case 4: {
        TextList items;
        std::uint32_t n = r_.u32();
        for (std::uint32_t i = 0; i < n; ++i) items.push_back(string_ref());
        return PropertyValue(std::move(items));
      }
      default: throw CorruptSnapshot(at, "unknown value kind");
    }
  }

  PropertyMap read_props() {
    PropertyMap props;
    std::uint32_t n = r_.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      std::size_t at = r_.offset();
      std::string key = string_ref();
      if (!props.emplace(std::move(key), read_value()).second) {
        throw CorruptSnapshot(at, "duplicate property key");
      }
    }
    return props;
  }

  Reader r_;
  std::vector<std::string> strings_;
  std::size_t section_end_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const Graph& g) {
  StringTable st;
  Writer nodes, rels, keys;

  nodes.u64(g.node_count());
  for (const auto& n : g.nodes()) {
    nodes.u32(static_cast<std::uint32_t>(n.labels.size()));
    for (const auto& l : n.labels) nodes.u32(st.intern(l));
    write_props(nodes, st, n.properties);
  }
  rels.u64(g.relationship_count());
  for (const auto& r : g.relationships()) {
    rels.u32(st.intern(r.type));
    rels.u64(r.src);
    rels.u64(r.dst);
    write_props(rels, st, r.properties);
  }
  keys.u32(static_cast<std::uint32_t>(g.indexed_keys().size()));
  for (const auto& k : g.indexed_keys()) keys.u32(st.intern(k));

  Writer strings;
  st.write(strings);

  Writer out;
  out.bytes(kMagic, sizeof kMagic);
  out.u16(kSnapshotVersion);
  out.section(kStrings, strings);
  out.section(kNodes, nodes);
  out.section(kRels, rels);
  out.section(kIndexedKeys, keys);
  return out.take();
}

Graph decode_snapshot(std::span<const std::uint8_t> bytes) { return Decoder(bytes).run(); }

std::size_t snapshot_save(const Graph& g, const std::filesystem::path& path) {
  auto bytes = encode_snapshot(g);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoFailure("write failed for " + path.string());
  return bytes.size();
}

Graph snapshot_load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (f.bad()) throw IoFailure("read failed for " + path.string());
  return decode_snapshot(bytes);
}

}  // namespace climakg
