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

// Grammar-error identification scored against gold token marks.
//
// A token is hypothesized erroneous when some rule instance on a link to
// its head or to one of its dependents is violated. Per token t with
// violating neighbors E(t), hypothesis H(t) = (E(t) non-empty) and gold
// mark G(t):
//
//   H(t) and G(t)          tp += 1
//   H(t) and not G(t)      fp += 0.5 for each t* in E(t) with not G(t*)
//   G(t) and not H(t)      fn += 1
//
// so a violated edge between two unmarked tokens costs one false positive
// in total, half charged to each endpoint.

#ifndef GRAMMEVAL_GEI_HPP_
#define GRAMMEVAL_GEI_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "grammeval/conllu.hpp"
#include "grammeval/rules.hpp"
#include "grammeval/scoring.hpp"

namespace grammeval {

struct GoldErrors {
  std::set<std::pair<std::string, int>> marks;  // (sentence key, token id)

  bool contains(const std::string& sent_key, int token_id) const {
    return marks.count({sent_key, token_id}) > 0;
  }
};

// Sidecar "sent_id<TAB>token_id" rows. Blank lines and '#' lines are
// skipped, as is a leading "sent_id<TAB>token_id" header.
GoldErrors LoadGoldErrors(std::istream& in, const std::string& origin = "<gold>");
GoldErrors ReadGoldErrorsFile(const std::string& path);

// Marks taken from MISC GoldError=Yes.
GoldErrors GoldErrorsFromMisc(const Treebank& tb);

// Throws DataError for the first mark that names no token of `tb`.
void ValidateGoldErrors(const GoldErrors& gold, const Treebank& tb);

struct PRReport {
  double tp = 0.0;
  double fp = 0.0;
  std::int64_t fn = 0;
  std::optional<double> precision;  // nullopt when tp + fp == 0
  std::optional<double> recall;     // nullopt when tp + fn == 0
};

// Neighbors of `token_id` (its head and dependents) joined to it by a
// violated rule instance.
std::set<int> ViolatingNeighbors(int token_id, const Sentence& sentence,
                                 const Scorer& scorer);
std::set<int> ViolatingNeighbors(int token_id, const Sentence& sentence,
                                 const RuleSet& rs);

PRReport EvaluateGei(const Treebank& tb, const GoldErrors& gold,
                     const RuleSet& rs);

}  // namespace grammeval

#endif  // GRAMMEVAL_GEI_HPP_
