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

// Rule-based well-formedness scores.
//
// A rule applies to an edge when the POS pair and relation match and the
// constrained token(s) carry the rule's feature. An edge missing the feature
// yields no instance at all, so tagger coverage is not mistaken for
// grammaticality.
//
// Segment score: equal-weight mean over applicable rules of the rule's
// within-sentence satisfied/applicable ratio. Corpus score: the same
// macro-average, but over counts pooled across the whole corpus, which is
// not the mean of segment scores.

#ifndef GRAMMEVAL_SCORING_HPP_
#define GRAMMEVAL_SCORING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grammeval/conllu.hpp"
#include "grammeval/rules.hpp"

namespace grammeval {

// Index of a rule within a RuleSet.
struct RuleRef {
  enum class Kind { kAgreement, kAssignment };
  Kind kind;
  std::size_t index;

  friend bool operator==(const RuleRef&, const RuleRef&) = default;
};

struct RuleInstance {
  RuleRef rule;
  std::string sent_id;
  int dependent_id = 0;
  int head_id = 0;
  bool satisfied = false;
};

struct RuleCounts {
  std::int64_t applicable = 0;
  std::int64_t satisfied = 0;
  double weight = 1.0;  // reserved; all rules currently weigh the same

  std::optional<double> ratio() const;
};

struct SegmentScore {
  std::string sent_id;
  std::map<std::string, RuleCounts> per_rule;  // applicable rules only
  std::optional<double> score;                 // nullopt when nothing applies
};

struct CorpusReport {
  std::map<std::string, RuleCounts> per_rule;  // every rule of the set
  std::optional<double> corpus_score;          // nullopt when nothing applies
  std::vector<SegmentScore> segment_scores;
  std::size_t sentences = 0;
  std::size_t scored_sentences = 0;  // sentences with a defined score
};

// Precondition for both checks: the edge matches the rule pattern and the
// relevant token(s) carry the feature.
bool CheckAgreement(const AgreementRule& rule, const EdgeInstance& edge);
bool CheckAssignment(const AssignmentRule& rule, const EdgeInstance& edge);

// Matches rules against edges. Build once per RuleSet and reuse; the
// RuleSet must outlive the Scorer.
class Scorer {
 public:
  explicit Scorer(const RuleSet& rules);

  const RuleSet& rules() const { return rules_; }
  std::string key(const RuleRef& ref) const;

  // One instance per (rule, matching edge), in edge order.
  std::vector<RuleInstance> Instances(const Sentence& sentence) const;

  SegmentScore ScoreSegment(const Sentence& sentence) const;

  // `jobs` shards sentences across threads; the report does not depend on
  // it. Segment scores are kept when `keep_segments` is set.
  CorpusReport ScoreCorpus(const Treebank& tb, bool keep_segments = false,
                           int jobs = 1) const;

 private:
  struct Candidates {
    std::vector<std::size_t> agreement;
    std::vector<std::size_t> dependent_side;  // assignment on the dependent
    std::vector<std::size_t> head_side;       // assignment on the head
  };

  const RuleSet& rules_;
  // "dep_pos\thead_pos\tdeprel" -> candidate rules
  std::unordered_map<std::string, Candidates> by_edge_;
};

std::vector<RuleInstance> ApplicableInstances(const Sentence& sentence,
                                              const RuleSet& rs);
SegmentScore ScoreSegment(const Sentence& sentence, const RuleSet& rs);
CorpusReport ScoreCorpus(const Treebank& tb, const RuleSet& rs,
                         bool keep_segments = false, int jobs = 1);

// Mean of segment scores over sentences where one is defined.
std::optional<double> MeanSegmentScore(const CorpusReport& report);

}  // namespace grammeval

#endif  // GRAMMEVAL_SCORING_HPP_
