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

// Morphological noise for treebanks.
//
// Each sentence yields at most one altered copy in which a single token is
// replaced by another inflection of the same lemma, taken from a UniMorph
// lexicon, that differs from the original analysis in exactly one feature.
// Tree structure, UPOS and LEMMA are untouched.

#ifndef GRAMMEVAL_NOISE_HPP_
#define GRAMMEVAL_NOISE_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grammeval/conllu.hpp"

namespace grammeval {

// Pseudo-feature under which UPOS -> POS-tag rows are stored in a
// FeatureMapping. It is matched but never substituted.
inline constexpr const char* kPosFeature = "UPOS";

struct ParadigmEntry {
  std::string form;
  std::set<std::string> tags;

  friend bool operator==(const ParadigmEntry&, const ParadigmEntry&) = default;
};

class InflectionLexicon {
 public:
  // Adds an entry unless the lemma already has one with the same tag set.
  // Returns whether it was added.
  bool Add(const std::string& lemma, ParadigmEntry entry);

  // Entries of `lemma` in insertion order; nullptr when unknown.
  const std::vector<ParadigmEntry>* Find(const std::string& lemma) const;

  std::size_t lemma_count() const { return paradigms_.size(); }
  std::size_t entry_count() const;
  bool empty() const { return paradigms_.empty(); }

 private:
  std::map<std::string, std::vector<ParadigmEntry>> paradigms_;
};

// Reads "lemma<TAB>form<TAB>TAG;TAG;..." rows. Blank lines are skipped;
// extra columns are ignored.
InflectionLexicon LoadUnimorph(std::istream& in, const std::string& origin = "<unimorph>");
InflectionLexicon ReadUnimorphFile(const std::string& path);

// UD (feature, value) <-> UniMorph tag correspondence.
class FeatureMapping {
 public:
  // Adds one row. Throws DataError if it breaks injectivity within the UD
  // feature or makes a tag ambiguous across features.
  void Add(const std::string& feature, const std::string& value,
           const std::string& tag);

  std::optional<std::string> Tag(const std::string& feature,
                                 const std::string& value) const;
  // (feature, value) for a tag. UPOS tags resolve to the first UPOS row.
  std::optional<std::pair<std::string, std::string>> Decode(
      const std::string& tag) const;

  bool maps_feature(const std::string& feature) const;
  std::size_t size() const { return forward_.size(); }

  friend bool operator==(const FeatureMapping&, const FeatureMapping&) = default;

  // The bundled mapping for Case, Number, Gender, Person, Tense, Mood,
  // VerbForm and common UPOS tags.
  static FeatureMapping Default();

 private:
  std::map<std::pair<std::string, std::string>, std::string> forward_;
  std::map<std::string, std::pair<std::string, std::string>> inverse_;
};

// Reads "UDFeature<TAB>UDValue<TAB>UniMorphTag" rows; '#' starts a comment.
FeatureMapping LoadFeatureMapping(std::istream& in, const std::string& origin = "<mapping>");
FeatureMapping ReadFeatureMappingFile(const std::string& path);

struct Alternation {
  std::string form;
  std::string feature;    // UD feature that changes
  std::string new_value;  // its new UD value

  friend bool operator==(const Alternation&, const Alternation&) = default;
};

// Alternate inflections of `token` differing in exactly one mapped feature.
//
// The token's analysis is mapped to UniMorph tags, restricted to the UD
// features the lemma's paradigm actually annotates (UniMorph noun entries
// usually omit gender, for example). An entry qualifies when its tag set
// equals that mapped set with exactly one tag replaced by another tag of
// the same feature, and its form differs from the token's.
std::vector<Alternation> CandidateAlterations(const Token& token,
                                              const InflectionLexicon& lex,
                                              const FeatureMapping& fm);

struct AlterationRecord {
  std::string sent_id;  // id of the altered copy
  int token_id = 0;
  std::string original_form;
  std::string altered_form;
  std::string changed_feature;
  std::string original_value;
  std::string altered_value;
};

struct PerturbOptions {
  std::uint64_t seed = 0;
  bool concat = false;           // interleave originals with altered copies
  bool keep_gold_feats = false;  // leave FEATS at the original analysis
  int jobs = 1;
};

struct PerturbResult {
  Treebank treebank;
  std::vector<AlterationRecord> records;
  std::size_t input_sentences = 0;

  std::size_t altered_sentences() const { return records.size(); }
  // Percentage of input sentences that received an altered copy.
  double coverage_percent() const;
};

// Output is a pure function of (tb, lex, fm, options.seed, concat,
// keep_gold_feats); `jobs` does not change it.
PerturbResult PerturbTreebank(const Treebank& tb, const InflectionLexicon& lex,
                              const FeatureMapping& fm,
                              const PerturbOptions& options);

// Manifest TSV with a header row.
std::string FormatManifest(const std::vector<AlterationRecord>& records);

}  // namespace grammeval

#endif  // GRAMMEVAL_NOISE_HPP_
