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

// Deliberately slow: every pattern triggers a fresh scan of the treebank.

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "test_support.hpp"

namespace grammeval::testing {
namespace {

struct Edge {
  const Token* dep;
  const Token* head;
  std::string rel;
};

std::string Coarsen(const std::string& rel) {
  const auto cut = rel.find_first_of(":@");
  return cut == std::string::npos ? rel : rel.substr(0, cut);
}

std::vector<Edge> AllEdges(const Treebank& tb, bool coarse) {
  std::vector<Edge> out;
  for (const auto& s : tb.sentences) {
    for (const auto& t : s.tokens) {
      if (t.head == 0) continue;
      out.push_back({&t, &s.tokens[t.head - 1], coarse ? Coarsen(t.deprel) : t.deprel});
    }
  }
  return out;
}

bool SharesValue(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& v : a) {
    if (b.count(v)) return true;
  }
  return false;
}

std::map<std::string, double> Normalize(const std::map<std::string, double>& counts) {
  double total = 0.0;
  for (const auto& [v, c] : counts) total += c;
  std::map<std::string, double> out;
  for (const auto& [v, c] : counts) out[v] = c / total;
  return out;
}

}  // namespace

RuleSet NaiveExtract(const Treebank& tb, const ExtractionConfig& cfg,
                     std::map<std::string, NaiveAssignmentTrace>* traces) {
  const double eps = kDefaultKlEpsilon;
  const std::vector<Edge> edges = AllEdges(tb, cfg.coarse_deprel);
  RuleSet rs;
  rs.config = cfg;

  // Agreement.
  std::set<std::tuple<std::string, std::string, std::string, std::string>> agree_patterns;
  for (const auto& e : edges) {
    for (const auto& [f, vals] : e.dep->feats.entries()) {
      if (e.head->feats.has(f)) agree_patterns.insert({e.dep->upos, e.head->upos, e.rel, f});
    }
  }
  std::vector<AgreementRule> candidates;
  std::int64_t candidate_total = 0;
  for (const auto& [x, y, d, f] : agree_patterns) {
    std::int64_t total = 0;
    std::int64_t agree = 0;
    for (const auto& e : edges) {
      if (e.dep->upos != x || e.head->upos != y || e.rel != d) continue;
      const auto* a = e.dep->feats.find(f);
      const auto* b = e.head->feats.find(f);
      if (!a || !b) continue;
      ++total;
      if (SharesValue(*a, *b)) ++agree;
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(total);
    if (fraction > cfg.agree_threshold) {
      candidates.push_back({x, y, d, f, total, fraction});
      candidate_total += total;
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.support != b.support) return a.support > b.support;
    return std::tie(a.dep_pos, a.head_pos, a.deprel, a.feature) <
           std::tie(b.dep_pos, b.head_pos, b.deprel, b.feature);
  });
  std::int64_t covered = 0;
  for (const auto& c : candidates) {
    if (static_cast<double>(covered) >= cfg.agree_coverage * static_cast<double>(candidate_total)) {
      break;
    }
    covered += c.support;
    rs.agreement.push_back(c);
  }
  std::sort(rs.agreement.begin(), rs.agreement.end(), [](const auto& a, const auto& b) {
    return std::tie(a.dep_pos, a.head_pos, a.deprel, a.feature) <
           std::tie(b.dep_pos, b.head_pos, b.deprel, b.feature);
  });

  // Assignment.
  std::set<std::tuple<std::string, std::string, std::string, Side, std::string>> assign_patterns;
  for (const auto& e : edges) {
    for (const auto& [f, vals] : e.dep->feats.entries()) {
      assign_patterns.insert({e.dep->upos, e.head->upos, e.rel, Side::kDependent, f});
    }
    for (const auto& [f, vals] : e.head->feats.entries()) {
      assign_patterns.insert({e.head->upos, e.dep->upos, e.rel, Side::kHead, f});
    }
  }
  for (const auto& [x, y, d, side, f] : assign_patterns) {
    std::int64_t instances = 0;
    std::map<std::string, double> local_counts;
    for (const auto& e : edges) {
      const Token* target = side == Side::kDependent ? e.dep : e.head;
      const Token* other = side == Side::kDependent ? e.head : e.dep;
      if (target->upos != x || other->upos != y || e.rel != d) continue;
      const auto* vals = target->feats.find(f);
      if (!vals) continue;
      ++instances;
      for (const auto& v : *vals) local_counts[v] += 1.0;
    }
    if (instances < cfg.min_relation_count) continue;
    std::map<std::string, double> global_counts;
    for (const auto& s : tb.sentences) {
      for (const auto& t : s.tokens) {
        if (t.upos != x) continue;
        if (const auto* vals = t.feats.find(f)) {
          for (const auto& v : *vals) global_counts[v] += 1.0;
        }
      }
    }
    const auto local = Normalize(local_counts);
    const auto global = Normalize(global_counts);
    std::set<std::string> support;
    for (const auto& [v, p] : local) support.insert(v);
    for (const auto& [v, p] : global) support.insert(v);
    double kl = 0.0;
    for (const auto& v : support) {
      const double l = local.count(v) ? local.at(v) : 0.0;
      const double g = global.count(v) ? global.at(v) : 0.0;
      if (l > 0.0) kl += l * std::log((l + eps) / (g + eps));
    }
    kl = std::max(kl, 0.0);
    if (!(kl > cfg.kl_threshold)) continue;

    std::vector<std::pair<double, std::string>> kept;
    for (const auto& [v, p] : local) {
      if (p >= cfg.value_inclusion_threshold) kept.push_back({p, v});
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    AssignmentRule rule{x, y, d, side, f, {}, kl, instances};
    for (const auto& [p, v] : kept) rule.allowed_values.push_back(v);
    if (traces) (*traces)[rule.key()] = {local, global, kl};
    rs.assignment.push_back(std::move(rule));
  }
  return rs;
}

}  // namespace grammeval::testing
