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

#include "grammeval/conllu.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "text_util.hpp"

namespace grammeval {
namespace {

using detail::Split;

char Lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Recognizes "# key = value" (spaces optional) and returns value.
std::optional<std::string> CommentValue(std::string_view line,
                                        std::string_view key) {
  if (line.empty() || line.front() != '#') return std::nullopt;
  std::string_view rest = detail::Trim(line.substr(1));
  if (rest.substr(0, key.size()) != key) return std::nullopt;
  rest = rest.substr(key.size());
  const auto eq = rest.find_first_not_of(' ');
  if (eq == std::string_view::npos || rest[eq] != '=') return std::nullopt;
  rest = rest.substr(eq + 1);
  if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  return std::string(rest);
}

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  void Line(std::string_view raw) {
    ++line_no_;
    const std::string_view line = detail::StripCr(raw);
    if (detail::Trim(line).empty()) {
      Flush();
      return;
    }
    if (!open_) {
      open_ = true;
      first_line_ = line_no_;
      current_ = Sentence{};
    }
    if (line.front() == '#') {
      if (!current_.tokens.empty() || !current_.multiword_ranges.empty() ||
          !current_.empty_nodes.empty()) {
        throw ParseError(origin_, line_no_, "comment line inside sentence body");
      }
      if (auto id = CommentValue(line, "sent_id")) {
        current_.sent_id = *id;
      } else if (auto text = CommentValue(line, "text")) {
        current_.source_text = *text;
      }
      current_.comments.emplace_back(line);
      return;
    }
    Row(line);
  }

  Treebank Finish() {
    Flush();
    tb_.origin = origin_;
    return std::move(tb_);
  }

 private:
  void Row(std::string_view line) {
    const auto cols = Split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError(origin_, line_no_,
                       "expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()));
    }
    const std::string_view id = cols[0];
    if (const auto dash = id.find('-'); dash != std::string_view::npos) {
      auto start = detail::ParseInt(id.substr(0, dash));
      auto end = detail::ParseInt(id.substr(dash + 1));
      if (!start || !end || *start < 1 || *end < *start) {
        throw ParseError(origin_, line_no_,
                         "bad multiword range '" + std::string(id) + "'");
      }
      current_.multiword_ranges.push_back(
          {*start, *end, std::string(cols[1]), std::string(line)});
      return;
    }
    if (const auto dot = id.find('.'); dot != std::string_view::npos) {
      auto after = detail::ParseInt(id.substr(0, dot));
      if (!after || *after < 0) {
        throw ParseError(origin_, line_no_,
                         "bad empty node id '" + std::string(id) + "'");
      }
      current_.empty_nodes.push_back({*after, std::string(line)});
      return;
    }

    Token tok;
    const auto parsed_id = detail::ParseInt(id);
    if (!parsed_id || *parsed_id < 1) {
      throw ParseError(origin_, line_no_,
                       "bad token id '" + std::string(id) + "'");
    }
    tok.id = *parsed_id;
    tok.form = cols[1];
    if (cols[2] != "_") tok.lemma = cols[2];
    tok.upos = cols[3];
    if (cols[4] != "_") tok.xpos = std::string(cols[4]);
    try {
      tok.feats = FeatureBundle::Parse(cols[5]);
    } catch (const DataError& e) {
      throw ParseError(origin_, line_no_, e.what());
    }
    const auto head = detail::ParseInt(cols[6]);
    if (!head || *head < 0) {
      throw ParseError(origin_, line_no_,
                       "non-integer head '" + std::string(cols[6]) + "'");
    }
    tok.head = *head;
    tok.deprel = cols[7];
    tok.deps = cols[8];
    tok.misc = ParseMisc(cols[9]);
    current_.tokens.push_back(std::move(tok));
  }

  void Flush() {
    if (!open_) return;
    open_ = false;
    if (current_.tokens.empty()) {
      throw ParseError(origin_, first_line_, "sentence has no word rows");
    }
    ValidateSentence(current_);
    if (!current_.sent_id.empty() && !seen_ids_.insert(current_.sent_id).second) {
      throw StructureError(origin_ + ": duplicate sent_id '" +
                           current_.sent_id + "'");
    }
    tb_.sentences.push_back(std::move(current_));
  }

  std::string origin_;
  std::size_t line_no_ = 0;
  std::size_t first_line_ = 0;
  bool open_ = false;
  Sentence current_;
  Treebank tb_;
  std::unordered_set<std::string> seen_ids_;
};

void AppendRow(std::string& out, const Token& t) {
  out += std::to_string(t.id);
  out += '\t';
  out += t.form;
  out += '\t';
  out += t.lemma.empty() ? "_" : t.lemma;
  out += '\t';
  out += t.upos;
  out += '\t';
  out += t.xpos.value_or("_");
  out += '\t';
  out += t.feats.str();
  out += '\t';
  out += std::to_string(t.head);
  out += '\t';
  out += t.deprel;
  out += '\t';
  out += t.deps;
  out += '\t';
  out += FormatMisc(t.misc);
  out += '\n';
}

}  // namespace

bool FeatureNameLess::operator()(const std::string& a,
                                 const std::string& b) const {
  const bool less = std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](char x, char y) { return Lower(x) < Lower(y); });
  if (less) return true;
  const bool greater = std::lexicographical_compare(
      b.begin(), b.end(), a.begin(), a.end(),
      [](char x, char y) { return Lower(x) < Lower(y); });
  // Fall back to byte order so names differing only in case stay distinct.
  return !greater && a < b;
}

FeatureBundle FeatureBundle::Parse(std::string_view column) {
  FeatureBundle fb;
  if (column.empty() || column == "_") return fb;
  for (std::string_view item : Split(column, '|')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw DataError("malformed feature '" + std::string(item) + "'");
    }
    std::string name(item.substr(0, eq));
    ValueSet values;
    for (std::string_view v : Split(item.substr(eq + 1), ',')) {
      if (v.empty()) {
        throw DataError("empty value in feature '" + std::string(item) + "'");
      }
      values.emplace(v);
    }
    if (!fb.entries_.emplace(name, std::move(values)).second) {
      throw DataError("duplicate feature '" + name + "'");
    }
  }
  return fb;
}

std::string FeatureBundle::str() const {
  if (entries_.empty()) return "_";
  std::string out;
  for (const auto& [name, values] : entries_) {
    if (!out.empty()) out += '|';
    out += name;
    out += '=';
    bool first = true;
    for (const auto& v : values) {
      if (!first) out += ',';
      out += v;
      first = false;
    }
  }
  return out;
}

const FeatureBundle::ValueSet* FeatureBundle::find(
    const std::string& name) const {
  const auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

void FeatureBundle::set(const std::string& name, ValueSet values) {
  if (values.empty()) {
    entries_.erase(name);
  } else {
    entries_[name] = std::move(values);
  }
}

bool Intersects(const FeatureBundle::ValueSet& a,
                const FeatureBundle::ValueSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

std::vector<MiscEntry> ParseMisc(std::string_view column) {
  std::vector<MiscEntry> out;
  if (column.empty() || column == "_") return out;
  for (std::string_view item : Split(column, '|')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.push_back({std::string(item), std::nullopt});
    } else {
      out.push_back({std::string(item.substr(0, eq)),
                     std::string(item.substr(eq + 1))});
    }
  }
  return out;
}

std::string FormatMisc(const std::vector<MiscEntry>& misc) {
  if (misc.empty()) return "_";
  std::string out;
  for (const auto& m : misc) {
    if (!out.empty()) out += '|';
    out += m.key;
    if (m.value) {
      out += '=';
      out += *m.value;
    }
  }
  return out;
}

std::optional<std::string> Token::misc_value(std::string_view key) const {
  for (const auto& m : misc) {
    if (m.key == key) return m.value.value_or("");
  }
  return std::nullopt;
}

bool Sentence::in_multiword(int id) const {
  return std::any_of(
      multiword_ranges.begin(), multiword_ranges.end(),
      [id](const MultiwordRange& r) { return r.start <= id && id <= r.end; });
}

std::vector<std::string> Sentence::other_comments() const {
  std::vector<std::string> out;
  for (const auto& c : comments) {
    if (!CommentValue(c, "sent_id") && !CommentValue(c, "text")) {
      out.push_back(c);
    }
  }
  return out;
}

bool operator==(const Sentence& a, const Sentence& b) {
  return a.sent_id == b.sent_id && a.source_text == b.source_text &&
         a.tokens == b.tokens && a.multiword_ranges == b.multiword_ranges &&
         a.empty_nodes == b.empty_nodes &&
         a.other_comments() == b.other_comments();
}

void ValidateSentence(const Sentence& s) {
  const std::string name =
      "sentence '" + (s.sent_id.empty() ? std::string("<no sent_id>") : s.sent_id) + "'";
  const int n = static_cast<int>(s.tokens.size());
  if (n == 0) throw StructureError(name + " has no tokens");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[i];
    if (t.id != i + 1) {
      throw StructureError(name + ": token ids are not 1.." +
                           std::to_string(n) + " (found " +
                           std::to_string(t.id) + " at position " +
                           std::to_string(i + 1) + ")");
    }
    if (t.head == t.id) {
      throw StructureError(name + ": token " + std::to_string(t.id) +
                           " is its own head");
    }
    if (t.head < 0 || t.head > n) {
      throw StructureError(name + ": token " + std::to_string(t.id) +
                           " has head " + std::to_string(t.head) +
                           " outside the sentence");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw StructureError(name + " has " + std::to_string(roots) +
                         " roots, expected exactly one");
  }
  // Every token must reach the root within n steps.
  for (const Token& t : s.tokens) {
    int cur = t.id;
    int steps = 0;
    while (cur != 0) {
      if (++steps > n) {
        throw StructureError(name + ": cycle through token " +
                             std::to_string(t.id));
      }
      cur = s.tokens[cur - 1].head;
    }
  }
}

Treebank ParseTreebank(std::istream& in, std::string origin) {
  Reader reader(std::move(origin));
  std::string line;
  while (std::getline(in, line)) reader.Line(line);
  return reader.Finish();
}

Treebank ParseTreebank(std::string_view text, std::string origin) {
  Reader reader(std::move(origin));
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    reader.Line(text.substr(start, end - start));
    start = end + 1;
  }
  return reader.Finish();
}

Treebank ReadTreebankFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ParseTreebank(in, path);
}

std::string SerializeSentence(const Sentence& s) {
  std::vector<std::string> head_lines;
  std::vector<std::string> lines;
  bool saw_id = false;
  bool saw_text = false;
  for (const auto& c : s.comments) {
    if (auto id = CommentValue(c, "sent_id")) {
      saw_id = true;
      if (s.sent_id.empty()) continue;
      lines.push_back(*id == s.sent_id ? c : "# sent_id = " + s.sent_id);
    } else if (auto text = CommentValue(c, "text")) {
      saw_text = true;
      if (!s.source_text) continue;
      lines.push_back(*text == *s.source_text ? c
                                              : "# text = " + *s.source_text);
    } else {
      lines.push_back(c);
    }
  }
  if (!saw_id && !s.sent_id.empty()) {
    head_lines.push_back("# sent_id = " + s.sent_id);
  }
  if (!saw_text && s.source_text) {
    head_lines.push_back("# text = " + *s.source_text);
  }

  std::string out;
  for (const auto& l : head_lines) out += l + '\n';
  for (const auto& l : lines) out += l + '\n';
  for (const auto& e : s.empty_nodes) {
    if (e.after == 0) out += e.line + '\n';
  }
  for (const Token& t : s.tokens) {
    for (const auto& r : s.multiword_ranges) {
      if (r.start == t.id) out += r.line + '\n';
    }
    AppendRow(out, t);
    for (const auto& e : s.empty_nodes) {
      if (e.after == t.id) out += e.line + '\n';
    }
  }
  out += '\n';
  return out;
}

std::string SerializeTreebank(const Treebank& tb) {
  std::string out;
  for (const auto& s : tb.sentences) out += SerializeSentence(s);
  return out;
}

void WriteTreebank(std::ostream& out, const Treebank& tb) {
  for (const auto& s : tb.sentences) out << SerializeSentence(s);
}

std::string_view RelationLabel(std::string_view deprel, bool coarse) {
  if (!coarse) return deprel;
  const auto cut = deprel.find_first_of(":@");
  return cut == std::string_view::npos ? deprel : deprel.substr(0, cut);
}

std::vector<EdgeInstance> Edges(const Sentence& sentence, bool coarse) {
  std::vector<EdgeInstance> out;
  out.reserve(sentence.tokens.size());
  for (const Token& t : sentence.tokens) {
    if (t.head == 0) continue;
    out.push_back({&t, &sentence.token(t.head), RelationLabel(t.deprel, coarse)});
  }
  return out;
}

std::string SentenceKey(const Sentence& sentence, std::size_t index) {
  return sentence.sent_id.empty() ? std::to_string(index + 1)
                                  : sentence.sent_id;
}

}  // namespace grammeval
