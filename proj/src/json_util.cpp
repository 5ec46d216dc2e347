// Copyright 2026 The grammeval Authors.
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

#include "grammeval/json_util.hpp"

#include <fmt/format.h>

namespace grammeval {
namespace {

void Dump(const Json& v, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann's default object type is an ordered std::map.
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        Dump(it.value(), indent, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        Dump(item, indent, depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      // Avoid "-0.000000".
      std::string s = fmt::format("{:.6f}", d);
      if (s == "-0.000000") s = "0.000000";
      out += s;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string DumpFixed(const Json& value, int indent) {
  std::string out;
  Dump(value, indent, 0, out);
  out += '\n';
  return out;
}

std::string FormatReal(std::optional<double> value) {
  if (!value) return "NA";
  std::string s = fmt::format("{:.6f}", *value);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace grammeval
