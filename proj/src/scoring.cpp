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

#include "grammeval/scoring.hpp"

#include "parallel.hpp"

namespace grammeval {
namespace {

std::string EdgeKey(std::string_view dep_pos, std::string_view head_pos,
                    std::string_view deprel) {
  std::string k;
  k.reserve(dep_pos.size() + head_pos.size() + deprel.size() + 2);
  k.append(dep_pos).append(1, '\t').append(head_pos).append(1, '\t').append(deprel);
  return k;
}

// Equal-weight mean of the defined ratios.
std::optional<double> MacroAverage(const std::map<std::string, RuleCounts>& per_rule) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [key, c] : per_rule) {
    if (auto r = c.ratio()) {
      sum += *r;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::optional<double> RuleCounts::ratio() const {
  if (applicable <= 0) return std::nullopt;
  return static_cast<double>(satisfied) / static_cast<double>(applicable);
}

bool CheckAgreement(const AgreementRule& rule, const EdgeInstance& edge) {
  const auto* dep = edge.dependent->feats.find(rule.feature);
  const auto* head = edge.head->feats.find(rule.feature);
  return dep && head && Intersects(*dep, *head);
}

bool CheckAssignment(const AssignmentRule& rule, const EdgeInstance& edge) {
  const Token& target =
      rule.side == Side::kDependent ? *edge.dependent : *edge.head;
  const auto* values = target.feats.find(rule.feature);
  if (!values) return false;
  for (const auto& allowed : rule.allowed_values) {
    if (values->count(allowed)) return true;
  }
  return false;
}

Scorer::Scorer(const RuleSet& rules) : rules_(rules) {
  for (std::size_t i = 0; i < rules_.agreement.size(); ++i) {
    const auto& r = rules_.agreement[i];
    by_edge_[EdgeKey(r.dep_pos, r.head_pos, r.deprel)].agreement.push_back(i);
  }
  for (std::size_t i = 0; i < rules_.assignment.size(); ++i) {
    const auto& r = rules_.assignment[i];
    if (r.side == Side::kDependent) {
      by_edge_[EdgeKey(r.target_pos, r.other_pos, r.deprel)].dependent_side.push_back(i);
    } else {
      by_edge_[EdgeKey(r.other_pos, r.target_pos, r.deprel)].head_side.push_back(i);
    }
  }
}

std::string Scorer::key(const RuleRef& ref) const {
  return ref.kind == RuleRef::Kind::kAgreement ? rules_.agreement[ref.index].key()
                                               : rules_.assignment[ref.index].key();
}

std::vector<RuleInstance> Scorer::Instances(const Sentence& sentence) const {
  std::vector<RuleInstance> out;
  for (const EdgeInstance& e : Edges(sentence, rules_.config.coarse_deprel)) {
    const auto it = by_edge_.find(EdgeKey(e.dependent->upos, e.head->upos, e.deprel));
    if (it == by_edge_.end()) continue;
    const Candidates& c = it->second;
    auto emit = [&](RuleRef::Kind kind, std::size_t index, bool satisfied) {
      out.push_back({{kind, index}, sentence.sent_id, e.dependent->id,
                     e.head->id, satisfied});
    };
    for (std::size_t i : c.agreement) {
      const auto& rule = rules_.agreement[i];
      if (!e.dependent->feats.has(rule.feature) || !e.head->feats.has(rule.feature)) {
        continue;
      }
      emit(RuleRef::Kind::kAgreement, i, CheckAgreement(rule, e));
    }
    for (std::size_t i : c.dependent_side) {
      const auto& rule = rules_.assignment[i];
      if (!e.dependent->feats.has(rule.feature)) continue;
      emit(RuleRef::Kind::kAssignment, i, CheckAssignment(rule, e));
    }
    for (std::size_t i : c.head_side) {
      const auto& rule = rules_.assignment[i];
      if (!e.head->feats.has(rule.feature)) continue;
      emit(RuleRef::Kind::kAssignment, i, CheckAssignment(rule, e));
    }
  }
  return out;
}

SegmentScore Scorer::ScoreSegment(const Sentence& sentence) const {
  SegmentScore seg;
  seg.sent_id = sentence.sent_id;
  for (const RuleInstance& inst : Instances(sentence)) {
    RuleCounts& c = seg.per_rule[key(inst.rule)];
    ++c.applicable;
    if (inst.satisfied) ++c.satisfied;
  }
  seg.score = MacroAverage(seg.per_rule);
  return seg;
}

CorpusReport Scorer::ScoreCorpus(const Treebank& tb, bool keep_segments,
                                 int jobs) const {
  const std::size_t n = tb.sentences.size();
  std::vector<SegmentScore> segments(n);
  detail::ForEachShard(n, jobs, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      segments[i] = ScoreSegment(tb.sentences[i]);
      if (segments[i].sent_id.empty()) segments[i].sent_id = SentenceKey(tb.sentences[i], i);
    }
  });

  CorpusReport report;
  for (const auto& r : rules_.agreement) report.per_rule[r.key()];
  for (const auto& r : rules_.assignment) report.per_rule[r.key()];
  report.sentences = n;
  for (const auto& seg : segments) {
    if (seg.score) ++report.scored_sentences;
    for (const auto& [key, c] : seg.per_rule) {
      RuleCounts& total = report.per_rule[key];
      total.applicable += c.applicable;
      total.satisfied += c.satisfied;
    }
  }
  report.corpus_score = MacroAverage(report.per_rule);
  if (keep_segments) report.segment_scores = std::move(segments);
  return report;
}

std::vector<RuleInstance> ApplicableInstances(const Sentence& sentence,
                                              const RuleSet& rs) {
  return Scorer(rs).Instances(sentence);
}

SegmentScore ScoreSegment(const Sentence& sentence, const RuleSet& rs) {
  return Scorer(rs).ScoreSegment(sentence);
}

CorpusReport ScoreCorpus(const Treebank& tb, const RuleSet& rs,
                         bool keep_segments, int jobs) {
  return Scorer(rs).ScoreCorpus(tb, keep_segments, jobs);
}

std::optional<double> MeanSegmentScore(const CorpusReport& report) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& seg : report.segment_scores) {
    if (seg.score) {
      sum += *seg.score;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace grammeval
