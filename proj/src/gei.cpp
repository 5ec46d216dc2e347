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

#include "grammeval/gei.hpp"

#include <fstream>
#include <map>
#include <utility>

#include "text_util.hpp"

namespace grammeval {
namespace {

// token id -> violating neighbors, for every token of the sentence.
std::map<int, std::set<int>> ViolationMap(const Sentence& sentence,
                                          const Scorer& scorer) {
  std::map<int, std::set<int>> out;
  for (const RuleInstance& inst : scorer.Instances(sentence)) {
    if (inst.satisfied) continue;
    out[inst.dependent_id].insert(inst.head_id);
    out[inst.head_id].insert(inst.dependent_id);
  }
  return out;
}

}  // namespace

GoldErrors LoadGoldErrors(std::istream& in, const std::string& origin) {
  GoldErrors gold;
  std::string raw;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::StripCr(raw);
    if (detail::Trim(line).empty() || line.front() == '#') continue;
    const bool header_allowed = std::exchange(first_row, false);
    const auto cols = detail::Split(line, '\t');
    if (cols.size() != 2) {
      throw ParseError(origin, line_no, "expected sent_id and token_id columns");
    }
    const auto id = detail::ParseInt(detail::Trim(cols[1]));
    if (!id) {
      if (header_allowed) continue;  // header row
      throw ParseError(origin, line_no, "token_id is not an integer");
    }
    gold.marks.emplace(std::string(cols[0]), *id);
  }
  return gold;
}

GoldErrors ReadGoldErrorsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return LoadGoldErrors(in, path);
}

GoldErrors GoldErrorsFromMisc(const Treebank& tb) {
  GoldErrors gold;
  for (std::size_t i = 0; i < tb.sentences.size(); ++i) {
    const Sentence& s = tb.sentences[i];
    for (const Token& t : s.tokens) {
      if (t.misc_value("GoldError") == std::optional<std::string>("Yes")) {
        gold.marks.emplace(SentenceKey(s, i), t.id);
      }
    }
  }
  return gold;
}

void ValidateGoldErrors(const GoldErrors& gold, const Treebank& tb) {
  std::map<std::string, int> lengths;
  for (std::size_t i = 0; i < tb.sentences.size(); ++i) {
    lengths[SentenceKey(tb.sentences[i], i)] =
        static_cast<int>(tb.sentences[i].tokens.size());
  }
  for (const auto& [sent, id] : gold.marks) {
    const auto it = lengths.find(sent);
    if (it == lengths.end()) {
      throw DataError("gold error names unknown sentence '" + sent + "'");
    }
    if (id < 1 || id > it->second) {
      throw DataError("gold error names token " + std::to_string(id) +
                      " outside sentence '" + sent + "'");
    }
  }
}

std::set<int> ViolatingNeighbors(int token_id, const Sentence& sentence,
                                 const Scorer& scorer) {
  auto all = ViolationMap(sentence, scorer);
  const auto it = all.find(token_id);
  return it == all.end() ? std::set<int>{} : std::move(it->second);
}

std::set<int> ViolatingNeighbors(int token_id, const Sentence& sentence,
                                 const RuleSet& rs) {
  return ViolatingNeighbors(token_id, sentence, Scorer(rs));
}

PRReport EvaluateGei(const Treebank& tb, const GoldErrors& gold,
                     const RuleSet& rs) {
  const Scorer scorer(rs);
  PRReport r;
  for (std::size_t i = 0; i < tb.sentences.size(); ++i) {
    const Sentence& s = tb.sentences[i];
    const std::string key = SentenceKey(s, i);
    const auto violations = ViolationMap(s, scorer);
    for (const Token& t : s.tokens) {
      const auto it = violations.find(t.id);
      const bool hyp = it != violations.end() && !it->second.empty();
      const bool is_gold = gold.contains(key, t.id);
      if (hyp) {
        if (is_gold) {
          r.tp += 1.0;
        } else {
          for (int other : it->second) {
            if (!gold.contains(key, other)) r.fp += 0.5;
          }
        }
      }
      if (is_gold && !hyp) ++r.fn;
    }
  }
  if (r.tp + r.fp > 0.0) r.precision = r.tp / (r.tp + r.fp);
  if (r.tp + static_cast<double>(r.fn) > 0.0) {
    r.recall = r.tp / (r.tp + static_cast<double>(r.fn));
  }
  return r;
}

}  // namespace grammeval
