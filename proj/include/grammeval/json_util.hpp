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

#ifndef GRAMMEVAL_JSON_UTIL_HPP_
#define GRAMMEVAL_JSON_UTIL_HPP_

#include <optional>
#include <string>

#include "json.hpp"

namespace grammeval {

using Json = nlohmann::json;

// Pretty-prints `value` with sorted keys and every floating-point number
// written with exactly six decimals. Integers are written as integers.
std::string DumpFixed(const Json& value, int indent = 2);

// Six-decimal text for a real, "NA" for a missing one.
std::string FormatReal(std::optional<double> value);

}  // namespace grammeval

#endif  // GRAMMEVAL_JSON_UTIL_HPP_
