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
#include <stdexcept>
#include <string>

namespace climakg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyLabelSet : public Error {
 public:
  EmptyLabelSet() : Error("node must carry at least one label") {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(std::uint64_t id)
      : Error("unknown node id " + std::to_string(id)), id_(id) {}
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

class UnknownRelationship : public Error {
 public:
  explicit UnknownRelationship(std::uint64_t id)
      : Error("unknown relationship id " + std::to_string(id)), id_(id) {}
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class FormatVersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptSnapshot : public Error {
 public:
  CorruptSnapshot(std::size_t offset, const std::string& what)
      : Error("corrupt snapshot at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace climakg
