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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace climakg {

using TextList = std::vector<std::string>;

/// Scalar or list-of-text value stored on nodes and relationships.
///
/// Equality is variant-strict: Text("5") never equals Int(5), and Int(5)
/// never equals Real(5.0).
class PropertyValue {
 public:
  enum class Kind : std::uint8_t { Text = 0, Int = 1, Real = 2, Bool = 3, TextList = 4 };

  PropertyValue() : v_(std::string{}) {}
  PropertyValue(std::string s) : v_(std::move(s)) {}
  PropertyValue(const char* s) : v_(std::string(s)) {}
  PropertyValue(std::string_view s) : v_(std::string(s)) {}
  PropertyValue(std::int64_t i) : v_(i) {}
  PropertyValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  PropertyValue(double d) : v_(d) {}
  PropertyValue(bool b) : v_(b) {}
  PropertyValue(TextList l) : v_(std::move(l)) {}

  Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }

  bool is_text() const noexcept { return kind() == Kind::Text; }
  bool is_int() const noexcept { return kind() == Kind::Int; }
  bool is_real() const noexcept { return kind() == Kind::Real; }
  bool is_bool() const noexcept { return kind() == Kind::Bool; }
  bool is_text_list() const noexcept { return kind() == Kind::TextList; }

  const std::string& as_text() const { return std::get<std::string>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  double as_real() const { return std::get<double>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }
  const TextList& as_text_list() const { return std::get<TextList>(v_); }

  friend bool operator==(const PropertyValue& a, const PropertyValue& b) = default;

  // Total order used for canonical sorting in tests and result comparison.
  friend bool operator<(const PropertyValue& a, const PropertyValue& b) { return a.v_ < b.v_; }

 private:
  std::variant<std::string, std::int64_t, double, bool, TextList> v_;
};

using PropertyMap = std::map<std::string, PropertyValue>;

const char* kind_name(PropertyValue::Kind k) noexcept;

/// Shortest text form of a double that reads back to the same value and
/// always carries a '.' or exponent so it never lexes as an integer.
std::string format_real(double d);

/// Human-readable rendering (Text unquoted, lists bracketed).
std::string display(const PropertyValue& v);

}  // namespace climakg
