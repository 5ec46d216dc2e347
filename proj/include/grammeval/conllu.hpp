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

// CoNLL-U reading and writing.
//
// Only syntactic-word rows become Tokens. Multiword-token lines ("3-4") and
// empty nodes ("3.1") are kept verbatim so that a parse/serialize cycle is
// lossless, but nothing downstream looks at them.

#ifndef GRAMMEVAL_CONLLU_HPP_
#define GRAMMEVAL_CONLLU_HPP_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grammeval/error.hpp"

namespace grammeval {

// Case-insensitive ordering used for FEATS names, as the UD validator does.
struct FeatureNameLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

// Morphological features of one word, e.g. Case=Acc|Number=Plur.
class FeatureBundle {
 public:
  using ValueSet = std::set<std::string>;
  using Map = std::map<std::string, ValueSet, FeatureNameLess>;

  FeatureBundle() = default;

  // Parses a FEATS column. "_" yields an empty bundle.
  static FeatureBundle Parse(std::string_view column);

  // FEATS column text; "_" when empty.
  std::string str() const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool has(const std::string& name) const { return entries_.count(name) > 0; }

  // Values of `name`, or nullptr when the feature is absent.
  const ValueSet* find(const std::string& name) const;

  // Replaces the value set of `name`. An empty set removes the feature.
  void set(const std::string& name, ValueSet values);
  void erase(const std::string& name) { entries_.erase(name); }

  const Map& entries() const { return entries_; }

  friend bool operator==(const FeatureBundle&, const FeatureBundle&) = default;

 private:
  Map entries_;
};

// True iff both sets share at least one value.
bool Intersects(const FeatureBundle::ValueSet& a,
                const FeatureBundle::ValueSet& b);

// One MISC entry. Entries without '=' have no value.
struct MiscEntry {
  std::string key;
  std::optional<std::string> value;

  friend bool operator==(const MiscEntry&, const MiscEntry&) = default;
};

std::vector<MiscEntry> ParseMisc(std::string_view column);
std::string FormatMisc(const std::vector<MiscEntry>& misc);

struct Token {
  int id = 0;
  std::string form;
  std::string lemma;  // empty when the column is "_"
  std::string upos;
  std::optional<std::string> xpos;
  FeatureBundle feats;
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps = "_";  // kept verbatim, never interpreted
  std::vector<MiscEntry> misc;

  // First MISC value for `key`, if any.
  std::optional<std::string> misc_value(std::string_view key) const;

  friend bool operator==(const Token&, const Token&) = default;
};

// A multiword-token line such as "1-2\tStο\t_\t...".
struct MultiwordRange {
  int start = 0;
  int end = 0;
  std::string form;
  std::string line;  // verbatim row

  friend bool operator==(const MultiwordRange&,
                         const MultiwordRange&) = default;
};

// An empty-node line such as "3.1\t...". Emitted after token `after`.
struct EmptyNode {
  int after = 0;
  std::string line;

  friend bool operator==(const EmptyNode&, const EmptyNode&) = default;
};

struct Sentence {
  std::string sent_id;
  std::optional<std::string> source_text;
  std::vector<Token> tokens;
  std::vector<MultiwordRange> multiword_ranges;
  std::vector<EmptyNode> empty_nodes;
  // Every comment line, verbatim and in order, including "# sent_id" and
  // "# text". On output those two are rewritten from the fields above.
  std::vector<std::string> comments;

  // Token with the given 1-based id. Precondition: 1 <= id <= tokens.size().
  const Token& token(int id) const { return tokens[id - 1]; }
  Token& token(int id) { return tokens[id - 1]; }

  // True when `id` lies inside a multiword range.
  bool in_multiword(int id) const;

  // Comments other than "# sent_id" and "# text".
  std::vector<std::string> other_comments() const;

  // Field-wise equality. The sent_id and text comment lines are compared
  // through `sent_id` and `source_text`, not verbatim.
  friend bool operator==(const Sentence& a, const Sentence& b);
};

struct Treebank {
  std::vector<Sentence> sentences;
  std::string origin;

  friend bool operator==(const Treebank& a, const Treebank& b) {
    return a.sentences == b.sentences;
  }
};

// Reads a CoNLL-U stream. Throws ParseError on malformed rows and
// StructureError when a sentence is not a single rooted tree.
Treebank ParseTreebank(std::istream& in, std::string origin = "<stream>");
Treebank ParseTreebank(std::string_view text, std::string origin = "<string>");
Treebank ReadTreebankFile(const std::string& path);

// Checks token numbering and the head graph of one sentence.
void ValidateSentence(const Sentence& sentence);

std::string SerializeSentence(const Sentence& sentence);
std::string SerializeTreebank(const Treebank& tb);
void WriteTreebank(std::ostream& out, const Treebank& tb);

// Dependency relation label. With `coarse`, everything from the first ':'
// or '@' on is dropped ("comp:obj" -> "comp", "subj@pass" -> "subj").
std::string_view RelationLabel(std::string_view deprel, bool coarse);

struct EdgeInstance {
  const Token* dependent;
  const Token* head;
  std::string_view deprel;
};

// One edge per non-root token, in token order.
std::vector<EdgeInstance> Edges(const Sentence& sentence, bool coarse = false);

// Stable identifier of a sentence: its sent_id, or its 1-based position.
std::string SentenceKey(const Sentence& sentence, std::size_t index);

}  // namespace grammeval

#endif  // GRAMMEVAL_CONLLU_HPP_
