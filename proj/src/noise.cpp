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

#include "grammeval/noise.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "text_util.hpp"

namespace grammeval {
namespace {

// Standard UD <-> UniMorph correspondences for the features we perturb.
constexpr const char* kDefaultMapping[][3] = {
    {"UPOS", "NOUN", "N"},      {"UPOS", "PROPN", "PROPN"},
    {"UPOS", "VERB", "V"},      {"UPOS", "AUX", "V"},
    {"UPOS", "ADJ", "ADJ"},     {"UPOS", "PRON", "PRO"},
    {"UPOS", "DET", "DET"},     {"UPOS", "ADV", "ADV"},
    {"UPOS", "NUM", "NUM"},
    {"Case", "Nom", "NOM"},     {"Case", "Acc", "ACC"},
    {"Case", "Gen", "GEN"},     {"Case", "Dat", "DAT"},
    {"Case", "Ins", "INS"},     {"Case", "Loc", "LOC"},
    {"Case", "Voc", "VOC"},     {"Case", "Abl", "ABL"},
    {"Case", "Par", "PRT"},     {"Case", "Ess", "FRML"},
    {"Number", "Sing", "SG"},   {"Number", "Plur", "PL"},
    {"Number", "Dual", "DU"},
    {"Gender", "Masc", "MASC"}, {"Gender", "Fem", "FEM"},
    {"Gender", "Neut", "NEUT"},
    {"Person", "1", "1"},       {"Person", "2", "2"},
    {"Person", "3", "3"},
    {"Tense", "Pres", "PRS"},   {"Tense", "Past", "PST"},
    {"Tense", "Fut", "FUT"},
    {"Mood", "Ind", "IND"},     {"Mood", "Sub", "SBJV"},
    {"Mood", "Imp", "IMP"},     {"Mood", "Cnd", "COND"},
    {"VerbForm", "Fin", "FIN"}, {"VerbForm", "Inf", "NFIN"},
    {"VerbForm", "Part", "V.PTCP"}, {"VerbForm", "Conv", "V.CVB"},
    {"VerbForm", "Ger", "V.MSDR"},
};

// Uniform integer in [0, n) without modulo bias; unlike
// std::uniform_int_distribution its output is the same on every standard
// library.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

std::mt19937_64 SentenceRng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::string JoinValues(const FeatureBundle::ValueSet& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    out += v;
  }
  return out;
}

// Character offset of token `id` in the sentence text, found by walking the
// surface units (multiword forms or word forms) left to right.
std::optional<std::size_t> SurfaceOffset(const Sentence& s, int id) {
  if (!s.source_text) return std::nullopt;
  const std::string& text = *s.source_text;
  std::size_t cursor = 0;
  int next = 1;
  const int n = static_cast<int>(s.tokens.size());
  while (next <= n) {
    const MultiwordRange* range = nullptr;
    for (const auto& r : s.multiword_ranges) {
      if (r.start == next) range = &r;
    }
    const std::string& unit = range ? range->form : s.token(next).form;
    const std::size_t pos = text.find(unit, cursor);
    if (pos == std::string::npos) return std::nullopt;
    if (!range && next == id) return pos;
    cursor = pos + unit.size();
    next = range ? range->end + 1 : next + 1;
  }
  return std::nullopt;
}

struct Altered {
  Sentence sentence;
  AlterationRecord record;
};

std::optional<Altered> PerturbSentence(const Sentence& s, std::size_t index,
                                       const InflectionLexicon& lex,
                                       const FeatureMapping& fm,
                                       const PerturbOptions& options) {
  std::vector<std::pair<int, std::vector<Alternation>>> pool;
  for (const Token& t : s.tokens) {
    if (s.in_multiword(t.id)) continue;
    auto cands = CandidateAlterations(t, lex, fm);
    if (!cands.empty()) pool.emplace_back(t.id, std::move(cands));
  }
  if (pool.empty()) return std::nullopt;

  std::mt19937_64 rng = SentenceRng(options.seed, index);
  const auto& [token_id, cands] = pool[UniformIndex(rng, pool.size())];
  const Alternation& alt = cands[UniformIndex(rng, cands.size())];

  Altered out{s, {}};
  Sentence& copy = out.sentence;
  copy.sent_id = SentenceKey(s, index) + "-alt";
  std::erase_if(copy.comments, [](const std::string& c) {
    return c.rfind("# newdoc", 0) == 0 || c.rfind("# newpar", 0) == 0;
  });

  const Token& orig = s.token(token_id);
  Token& tok = copy.token(token_id);
  const auto* orig_values = orig.feats.find(alt.feature);
  out.record = {copy.sent_id,
                token_id,
                orig.form,
                alt.form,
                alt.feature,
                orig_values ? JoinValues(*orig_values) : std::string(),
                alt.new_value};

  if (copy.source_text) {
    if (auto pos = SurfaceOffset(s, token_id)) {
      copy.source_text->replace(*pos, orig.form.size(), alt.form);
    } else {
      copy.source_text.reset();
    }
  }
  tok.form = alt.form;
  if (!options.keep_gold_feats) tok.feats.set(alt.feature, {alt.new_value});
  tok.misc.push_back({"Altered", "Yes"});
  tok.misc.push_back({"OrigForm", orig.form});
  tok.misc.push_back({"ChangedFeat", alt.feature});
  return out;
}

}  // namespace

bool InflectionLexicon::Add(const std::string& lemma, ParadigmEntry entry) {
  auto& entries = paradigms_[lemma];
  for (const auto& e : entries) {
    if (e.tags == entry.tags) return false;
  }
  entries.push_back(std::move(entry));
  return true;
}

const std::vector<ParadigmEntry>* InflectionLexicon::Find(
    const std::string& lemma) const {
  const auto it = paradigms_.find(lemma);
  return it == paradigms_.end() ? nullptr : &it->second;
}

std::size_t InflectionLexicon::entry_count() const {
  std::size_t n = 0;
  for (const auto& [lemma, entries] : paradigms_) n += entries.size();
  return n;
}

InflectionLexicon LoadUnimorph(std::istream& in, const std::string& origin) {
  InflectionLexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::StripCr(raw);
    if (detail::Trim(line).empty()) continue;
    const auto cols = detail::Split(line, '\t');
    if (cols.size() < 3) {
      throw ParseError(origin, line_no,
                       "expected lemma, form and tags, found " +
                           std::to_string(cols.size()) + " column(s)");
    }
    ParadigmEntry entry{std::string(cols[1]), {}};
    for (std::string_view tag : detail::Split(cols[2], ';')) {
      tag = detail::Trim(tag);
      if (!tag.empty()) entry.tags.emplace(tag);
    }
    if (entry.tags.empty() || cols[0].empty() || cols[1].empty()) {
      throw ParseError(origin, line_no, "empty lemma, form or tag set");
    }
    lex.Add(std::string(cols[0]), std::move(entry));
  }
  return lex;
}

InflectionLexicon ReadUnimorphFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return LoadUnimorph(in, path);
}

void FeatureMapping::Add(const std::string& feature, const std::string& value,
                         const std::string& tag) {
  const auto key = std::make_pair(feature, value);
  if (auto it = forward_.find(key); it != forward_.end()) {
    if (it->second == tag) return;
    throw DataError("feature mapping: " + feature + "=" + value +
                    " mapped to both " + it->second + " and " + tag);
  }
  const bool is_pos = feature == kPosFeature;
  if (auto it = inverse_.find(tag); it != inverse_.end()) {
    if (it->second.first != feature) {
      throw DataError("feature mapping: tag " + tag + " used by both " +
                      it->second.first + " and " + feature);
    }
    if (!is_pos) {
      throw DataError("feature mapping: " + feature + " values " +
                      it->second.second + " and " + value +
                      " both map to tag " + tag);
    }
  } else {
    inverse_.emplace(tag, key);
  }
  forward_.emplace(key, tag);
}

std::optional<std::string> FeatureMapping::Tag(const std::string& feature,
                                               const std::string& value) const {
  const auto it = forward_.find({feature, value});
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::string, std::string>> FeatureMapping::Decode(
    const std::string& tag) const {
  const auto it = inverse_.find(tag);
  if (it == inverse_.end()) return std::nullopt;
  return it->second;
}

bool FeatureMapping::maps_feature(const std::string& feature) const {
  const auto it = forward_.lower_bound({feature, std::string()});
  return it != forward_.end() && it->first.first == feature;
}

FeatureMapping FeatureMapping::Default() {
  FeatureMapping fm;
  for (const auto& row : kDefaultMapping) fm.Add(row[0], row[1], row[2]);
  return fm;
}

FeatureMapping LoadFeatureMapping(std::istream& in, const std::string& origin) {
  FeatureMapping fm;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::StripCr(raw);
    if (detail::Trim(line).empty() || line.front() == '#') continue;
    const auto cols = detail::Split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError(origin, line_no,
                       "expected UDFeature, UDValue and UniMorphTag columns");
    }
    try {
      fm.Add(std::string(cols[0]), std::string(cols[1]), std::string(cols[2]));
    } catch (const DataError& e) {
      throw ParseError(origin, line_no, e.what());
    }
  }
  return fm;
}

FeatureMapping ReadFeatureMappingFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return LoadFeatureMapping(in, path);
}

std::vector<Alternation> CandidateAlterations(const Token& token,
                                              const InflectionLexicon& lex,
                                              const FeatureMapping& fm) {
  std::vector<Alternation> out;
  if (token.lemma.empty() || token.feats.empty()) return out;
  const auto* entries = lex.Find(token.lemma);
  if (!entries) return out;

  std::set<std::string> annotated;  // UD features the paradigm uses
  for (const auto& e : *entries) {
    for (const auto& tag : e.tags) {
      if (auto decoded = fm.Decode(tag)) annotated.insert(decoded->first);
    }
  }

  std::set<std::string> mapped;
  if (annotated.count(kPosFeature)) {
    if (auto tag = fm.Tag(kPosFeature, token.upos)) mapped.insert(*tag);
  }
  for (const auto& [feature, values] : token.feats.entries()) {
    // Disjunctive values have no single tag; such features are left out.
    if (values.size() != 1 || !annotated.count(feature)) continue;
    if (auto tag = fm.Tag(feature, *values.begin())) mapped.insert(*tag);
  }

  for (const auto& e : *entries) {
    if (e.form == token.form) continue;
    std::vector<std::string> removed;
    std::vector<std::string> added;
    std::set_difference(mapped.begin(), mapped.end(), e.tags.begin(),
                        e.tags.end(), std::back_inserter(removed));
    std::set_difference(e.tags.begin(), e.tags.end(), mapped.begin(),
                        mapped.end(), std::back_inserter(added));
    if (removed.size() != 1 || added.size() != 1) continue;
    const auto from = fm.Decode(removed.front());
    const auto to = fm.Decode(added.front());
    if (!from || !to || from->first != to->first) continue;
    if (from->first == kPosFeature) continue;
    out.push_back({e.form, to->first, to->second});
  }
  return out;
}

double PerturbResult::coverage_percent() const {
  if (input_sentences == 0) return 0.0;
  return 100.0 * static_cast<double>(records.size()) /
         static_cast<double>(input_sentences);
}

PerturbResult PerturbTreebank(const Treebank& tb, const InflectionLexicon& lex,
                              const FeatureMapping& fm,
                              const PerturbOptions& options) {
  const std::size_t n = tb.sentences.size();
  std::vector<std::optional<Altered>> altered(n);
  detail::ForEachShard(n, options.jobs, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      altered[i] = PerturbSentence(tb.sentences[i], i, lex, fm, options);
    }
  });

  PerturbResult result;
  result.input_sentences = n;
  result.treebank.origin = tb.origin;
  for (std::size_t i = 0; i < n; ++i) {
    if (options.concat) result.treebank.sentences.push_back(tb.sentences[i]);
    if (altered[i]) {
      result.treebank.sentences.push_back(std::move(altered[i]->sentence));
      result.records.push_back(std::move(altered[i]->record));
    }
  }
  return result;
}

std::string FormatManifest(const std::vector<AlterationRecord>& records) {
  std::ostringstream out;
  out << "sent_id\ttoken_id\torig_form\tnew_form\tfeature\torig_value\tnew_value\n";
  for (const auto& r : records) {
    out << r.sent_id << '\t' << r.token_id << '\t' << r.original_form << '\t'
        << r.altered_form << '\t' << r.changed_feature << '\t'
        << r.original_value << '\t' << r.altered_value << '\n';
  }
  return out.str();
}

}  // namespace grammeval
