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

// Morphosyntactic rules and their extraction from treebanks.
//
// Two rule families are supported:
//
//   agreement   (x, y, d) -> f_x = f_y
//       a dependent of POS x attached to a head of POS y by relation d
//       shares the value of feature f with its head;
//
//   assignment  (x, y, d, side) -> f_x in F
//       the word of POS x at the given side of a d-edge whose other end has
//       POS y takes its value of f from the fixed set F (case assignment,
//       verb form choice).
//
// Agreement rules are mined by agreement ratio plus cumulative-coverage
// pruning; assignment rules by the KL divergence between the value
// distribution at one edge position and the treebank-wide distribution.

#ifndef GRAMMEVAL_RULES_HPP_
#define GRAMMEVAL_RULES_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "grammeval/conllu.hpp"

namespace grammeval {

inline constexpr double kDefaultKlEpsilon = 1e-9;
inline constexpr int kRuleFileVersion = 1;

struct ExtractionConfig {
  double agree_threshold = 0.9;   // strict lower bound on agreement ratio
  double agree_coverage = 0.8;    // cumulative support kept after pruning
  double kl_threshold = 0.9;      // strict lower bound on KL(local || global)
  std::int64_t min_relation_count = 100;
  double value_inclusion_threshold = 0.05;
  bool coarse_deprel = false;     // strip ":subtype" / "@ext" from labels

  // Throws DataError naming the first out-of-range field.
  void Validate() const;

  friend bool operator==(const ExtractionConfig&,
                         const ExtractionConfig&) = default;
};

struct AgreementRule {
  std::string dep_pos;
  std::string head_pos;
  std::string deprel;
  std::string feature;
  std::int64_t support = 0;
  double agree_fraction = 0.0;

  std::string key() const;

  friend bool operator==(const AgreementRule&, const AgreementRule&) = default;
};

enum class Side { kDependent, kHead };

const char* SideName(Side side);
Side ParseSide(std::string_view name);  // throws DataError

struct AssignmentRule {
  std::string target_pos;
  std::string other_pos;
  std::string deprel;
  Side side = Side::kDependent;
  std::string feature;
  std::vector<std::string> allowed_values;  // by descending local mass
  double kl = 0.0;
  std::int64_t support = 0;

  std::string key() const;

  friend bool operator==(const AssignmentRule&,
                         const AssignmentRule&) = default;
};

struct RuleSet {
  std::string language;
  std::string schema;
  std::vector<AgreementRule> agreement;
  std::vector<AssignmentRule> assignment;
  ExtractionConfig config;

  std::size_t size() const { return agreement.size() + assignment.size(); }

  // Throws DataError naming the first duplicated rule key.
  void CheckUnique() const;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

// Empirical distribution over feature values.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::map<std::string, double> mass);

  // Normalizes raw counts. All-zero or empty counts give an empty
  // distribution.
  static Distribution FromCounts(const std::map<std::string, std::int64_t>& counts);

  const std::map<std::string, double>& mass() const { return mass_; }
  double operator[](const std::string& value) const;
  bool empty() const { return mass_.empty(); }

 private:
  std::map<std::string, double> mass_;
};

// KL(local || global) with natural log and additive smoothing over the
// union of supports, clamped at zero.
double KlDivergence(const Distribution& local, const Distribution& global,
                    double epsilon = kDefaultKlEpsilon);

// `jobs` shards the counting pass by sentence; results do not depend on it.
std::vector<AgreementRule> ExtractAgreementRules(const Treebank& tb,
                                                 const ExtractionConfig& cfg,
                                                 int jobs = 1);
std::vector<AssignmentRule> ExtractAssignmentRules(const Treebank& tb,
                                                   const ExtractionConfig& cfg,
                                                   int jobs = 1);

struct ExtractionStats {
  std::size_t sentences = 0;
  std::int64_t edges = 0;
  std::size_t agreement_patterns = 0;    // (x, y, d, f) seen with f on both ends
  std::size_t agreement_candidates = 0;  // patterns above agree_threshold
  std::int64_t candidate_support = 0;
  std::int64_t kept_support = 0;         // after coverage pruning
  std::size_t assignment_patterns = 0;   // (x, y, d, side, f) seen
  std::size_t assignment_frequent = 0;   // patterns meeting min_relation_count
};

// Both extractors plus the metadata. `stats`, when given, receives counts
// describing the extraction.
RuleSet ExtractRules(const Treebank& tb, const ExtractionConfig& cfg,
                     std::string language = "", std::string schema = "",
                     int jobs = 1, ExtractionStats* stats = nullptr);

// Rule-file JSON. Keys are sorted and reals carry six decimals.
std::string SaveRules(const RuleSet& rs);
void SaveRules(const RuleSet& rs, std::ostream& out);
RuleSet LoadRules(std::string_view text);
RuleSet LoadRules(std::istream& in);
RuleSet ReadRulesFile(const std::string& path);

}  // namespace grammeval

#endif  // GRAMMEVAL_RULES_HPP_
