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

#include "grammeval/rules.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "parallel.hpp"

namespace grammeval {
namespace {

// (dep_pos, head_pos, deprel, feature)
using AgreeKey = std::tuple<std::string, std::string, std::string, std::string>;
// (target_pos, other_pos, deprel, side, feature)
using AssignKey =
    std::tuple<std::string, std::string, std::string, Side, std::string>;
// (pos, feature)
using GlobalKey = std::pair<std::string, std::string>;

struct AgreeCount {
  std::int64_t total = 0;
  std::int64_t agree = 0;
};

struct LocalCount {
  std::int64_t instances = 0;
  std::map<std::string, std::int64_t> values;
};

// Integer tallies over a slice of the treebank. Merging is exact, so the
// result does not depend on how sentences were sharded.
struct Counts {
  std::map<AgreeKey, AgreeCount> agree;
  std::map<GlobalKey, std::map<std::string, std::int64_t>> global;
  std::map<AssignKey, LocalCount> local;
  std::int64_t edges = 0;

  void Merge(const Counts& other) {
    edges += other.edges;
    for (const auto& [k, c] : other.agree) {
      auto& mine = agree[k];
      mine.total += c.total;
      mine.agree += c.agree;
    }
    for (const auto& [k, vals] : other.global) {
      auto& mine = global[k];
      for (const auto& [v, n] : vals) mine[v] += n;
    }
    for (const auto& [k, c] : other.local) {
      auto& mine = local[k];
      mine.instances += c.instances;
      for (const auto& [v, n] : c.values) mine.values[v] += n;
    }
  }
};

void AddValues(std::map<std::string, std::int64_t>& into,
               const FeatureBundle::ValueSet& values) {
  // A multi-valued feature contributes one count per listed value.
  for (const auto& v : values) ++into[v];
}

void CountSentence(const Sentence& s, const ExtractionConfig& cfg,
                   Counts& counts) {
  for (const Token& t : s.tokens) {
    for (const auto& [f, values] : t.feats.entries()) {
      AddValues(counts.global[{t.upos, f}], values);
    }
  }
  for (const EdgeInstance& e : Edges(s, cfg.coarse_deprel)) {
    ++counts.edges;
    const Token& dep = *e.dependent;
    const Token& head = *e.head;
    const std::string rel(e.deprel);
    for (const auto& [f, dep_values] : dep.feats.entries()) {
      if (const auto* head_values = head.feats.find(f)) {
        auto& c = counts.agree[{dep.upos, head.upos, rel, f}];
        ++c.total;
        if (Intersects(dep_values, *head_values)) ++c.agree;
      }
      auto& local = counts.local[{dep.upos, head.upos, rel, Side::kDependent, f}];
      ++local.instances;
      AddValues(local.values, dep_values);
    }
    for (const auto& [f, head_values] : head.feats.entries()) {
      auto& local = counts.local[{head.upos, dep.upos, rel, Side::kHead, f}];
      ++local.instances;
      AddValues(local.values, head_values);
    }
  }
}

Counts CountTreebank(const Treebank& tb, const ExtractionConfig& cfg,
                     int jobs) {
  const std::size_t n = tb.sentences.size();
  std::vector<Counts> shards(detail::ShardCount(n, jobs));
  detail::ForEachShard(n, jobs, [&](std::size_t k, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) CountSentence(tb.sentences[i], cfg, shards[k]);
  });
  Counts total = std::move(shards.front());
  for (std::size_t k = 1; k < shards.size(); ++k) total.Merge(shards[k]);
  return total;
}

std::vector<AgreementRule> AgreementFromCounts(const Counts& counts,
                                               const ExtractionConfig& cfg) {
  std::vector<AgreementRule> candidates;
  std::int64_t candidate_support = 0;
  for (const auto& [key, c] : counts.agree) {
    const double fraction =
        static_cast<double>(c.agree) / static_cast<double>(c.total);
    if (fraction <= cfg.agree_threshold) continue;
    const auto& [x, y, d, f] = key;
    candidates.push_back({x, y, d, f, c.total, fraction});
    candidate_support += c.total;
  }
  // Most frequent first; ties fall back to the key, which the map order
  // already gives us, so a stable sort suffices.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const AgreementRule& a, const AgreementRule& b) {
                     return a.support > b.support;
                   });
  const double target = cfg.agree_coverage * static_cast<double>(candidate_support);
  std::vector<AgreementRule> kept;
  std::int64_t covered = 0;
  for (auto& rule : candidates) {
    if (static_cast<double>(covered) >= target) break;
    covered += rule.support;
    kept.push_back(std::move(rule));
  }
  std::sort(kept.begin(), kept.end(),
            [](const AgreementRule& a, const AgreementRule& b) {
              return std::tie(a.dep_pos, a.head_pos, a.deprel, a.feature) <
                     std::tie(b.dep_pos, b.head_pos, b.deprel, b.feature);
            });
  return kept;
}

std::vector<AssignmentRule> AssignmentFromCounts(const Counts& counts,
                                                 const ExtractionConfig& cfg) {
  std::vector<AssignmentRule> rules;
  for (const auto& [key, local] : counts.local) {
    if (local.instances < cfg.min_relation_count) continue;
    const auto& [x, y, d, side, f] = key;
    const auto global_it = counts.global.find({x, f});
    if (global_it == counts.global.end()) continue;
    const Distribution ldist = Distribution::FromCounts(local.values);
    const Distribution gdist = Distribution::FromCounts(global_it->second);
    const double kl = KlDivergence(ldist, gdist);
    if (!(kl > cfg.kl_threshold)) continue;

    std::vector<std::pair<std::string, double>> kept;
    for (const auto& [v, p] : ldist.mass()) {
      if (p >= cfg.value_inclusion_threshold) kept.emplace_back(v, p);
    }
    if (kept.empty()) continue;
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    AssignmentRule rule{x, y, d, side, f, {}, kl, local.instances};
    for (auto& [v, p] : kept) rule.allowed_values.push_back(v);
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace

void ExtractionConfig::Validate() const {
  auto fraction = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw DataError(std::string(name) + " must lie in (0, 1], got " +
                      std::to_string(v));
    }
  };
  fraction(agree_threshold, "agree_threshold");
  fraction(agree_coverage, "agree_coverage");
  fraction(value_inclusion_threshold, "value_inclusion_threshold");
  if (!(kl_threshold >= 0.0) || !std::isfinite(kl_threshold)) {
    throw DataError("kl_threshold must be a finite non-negative number");
  }
  if (min_relation_count < 1) {
    throw DataError("min_relation_count must be at least 1");
  }
}

std::string AgreementRule::key() const {
  return "agree(" + dep_pos + "," + head_pos + "," + deprel + "):" + feature;
}

const char* SideName(Side side) {
  return side == Side::kDependent ? "dependent" : "head";
}

Side ParseSide(std::string_view name) {
  if (name == "dependent") return Side::kDependent;
  if (name == "head") return Side::kHead;
  throw DataError("unknown side '" + std::string(name) + "'");
}

std::string AssignmentRule::key() const {
  return "assign(" + target_pos + "," + other_pos + "," + deprel + "," +
         SideName(side) + "):" + feature;
}

void RuleSet::CheckUnique() const {
  std::set<std::string> seen;
  for (const auto& r : agreement) {
    if (!seen.insert(r.key()).second) {
      throw DataError("duplicate agreement rule " + r.key());
    }
  }
  for (const auto& r : assignment) {
    if (!seen.insert(r.key()).second) {
      throw DataError("duplicate assignment rule " + r.key());
    }
  }
}

Distribution::Distribution(std::map<std::string, double> mass)
    : mass_(std::move(mass)) {}

Distribution Distribution::FromCounts(
    const std::map<std::string, std::int64_t>& counts) {
  std::int64_t total = 0;
  for (const auto& [v, n] : counts) total += n;
  std::map<std::string, double> mass;
  if (total <= 0) return Distribution(std::move(mass));
  for (const auto& [v, n] : counts) {
    if (n > 0) mass[v] = static_cast<double>(n) / static_cast<double>(total);
  }
  return Distribution(std::move(mass));
}

double Distribution::operator[](const std::string& value) const {
  const auto it = mass_.find(value);
  return it == mass_.end() ? 0.0 : it->second;
}

double KlDivergence(const Distribution& local, const Distribution& global,
                    double epsilon) {
  // Terms with L(v) = 0 contribute nothing, so summing over the local
  // support is the same as summing over the union.
  double kl = 0.0;
  for (const auto& [v, p] : local.mass()) {
    if (p <= 0.0) continue;
    kl += p * std::log((p + epsilon) / (global[v] + epsilon));
  }
  return std::max(kl, 0.0);
}

std::vector<AgreementRule> ExtractAgreementRules(const Treebank& tb,
                                                 const ExtractionConfig& cfg,
                                                 int jobs) {
  cfg.Validate();
  return AgreementFromCounts(CountTreebank(tb, cfg, jobs), cfg);
}

std::vector<AssignmentRule> ExtractAssignmentRules(const Treebank& tb,
                                                   const ExtractionConfig& cfg,
                                                   int jobs) {
  cfg.Validate();
  return AssignmentFromCounts(CountTreebank(tb, cfg, jobs), cfg);
}

RuleSet ExtractRules(const Treebank& tb, const ExtractionConfig& cfg,
                     std::string language, std::string schema, int jobs,
                     ExtractionStats* stats) {
  cfg.Validate();
  const Counts counts = CountTreebank(tb, cfg, jobs);
  RuleSet rs;
  rs.language = std::move(language);
  rs.schema = std::move(schema);
  rs.config = cfg;
  rs.agreement = AgreementFromCounts(counts, cfg);
  rs.assignment = AssignmentFromCounts(counts, cfg);
  if (stats) {
    *stats = ExtractionStats{};
    stats->sentences = tb.sentences.size();
    stats->edges = counts.edges;
    stats->agreement_patterns = counts.agree.size();
    for (const auto& [key, c] : counts.agree) {
      if (static_cast<double>(c.agree) / static_cast<double>(c.total) >
          cfg.agree_threshold) {
        ++stats->agreement_candidates;
        stats->candidate_support += c.total;
      }
    }
    for (const auto& r : rs.agreement) stats->kept_support += r.support;
    stats->assignment_patterns = counts.local.size();
    for (const auto& [key, c] : counts.local) {
      if (c.instances >= cfg.min_relation_count) ++stats->assignment_frequent;
    }
  }
  return rs;
}

}  // namespace grammeval
