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

#include "climakg/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace climakg {

const char* kind_name(PropertyValue::Kind k) noexcept {
  switch (k) {
    case PropertyValue::Kind::Text: return "text";
    case PropertyValue::Kind::Int: return "int";
    case PropertyValue::Kind::Real: return "real";
    case PropertyValue::Kind::Bool: return "bool";
    case PropertyValue::Kind::TextList: return "text-list";
  }
  return "?";
}

std::string format_real(double d) {
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  std::string s(buf.data(), end);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string display(const PropertyValue& v) {
  switch (v.kind()) {
    case PropertyValue::Kind::Text: return v.as_text();
    case PropertyValue::Kind::Int: return std::to_string(v.as_int());
    case PropertyValue::Kind::Real: return format_real(v.as_real());
    case PropertyValue::Kind::Bool: return v.as_bool() ? "true" : "false";
    case PropertyValue::Kind::TextList: {
      std::string out = "[";
      const auto& items = v.as_text_list();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
      }
      return out + "]";
    }
  }
  return {};
}

}  // namespace climakg
