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
#include <filesystem>
#include <span>
#include <vector>

#include "climakg/graph.hpp"

namespace climakg {

/// Binary snapshot container, little-endian throughout:
///
///   "CKG1"  u16 version
///   section*4: u8 tag, u64 payload length, payload
///     1 strings:   u32 n, n x (u32 len, bytes)
///     2 nodes:     u64 n, n x (u32 nlabels, u32 str*, props)
///     3 rels:      u64 n, n x (u32 type str, u64 src, u64 dst, props)
///     4 idx keys:  u32 n, u32 str*
///   props: u32 n, n x (u32 key str, value)
///   value: u8 kind, then Text: u32 str | Int: i64 | Real: u64 IEEE-754 bits
///          | Bool: u8 | TextList: u32 n, u32 str*
///
/// Node and relationship ids are implicit in table position. Strings are
/// interned in first-use order, so re-saving a loaded graph is byte-stable.
inline constexpr std::uint16_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const Graph& g);
Graph decode_snapshot(std::span<const std::uint8_t> bytes);

/// Returns the number of bytes written.
std::size_t snapshot_save(const Graph& g, const std::filesystem::path& path);
Graph snapshot_load(const std::filesystem::path& path);

}  // namespace climakg
