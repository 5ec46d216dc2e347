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

// System-level correlation between a metric and external judgments.

#ifndef GRAMMEVAL_STATS_HPP_
#define GRAMMEVAL_STATS_HPP_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grammeval {

inline constexpr double kMadConsistency = 1.483;
inline constexpr double kDefaultOutlierCutoff = 2.5;

struct SystemScore {
  std::string system_id;
  double metric_score = 0.0;
  double judgment_score = 0.0;

  friend bool operator==(const SystemScore&, const SystemScore&) = default;
};

struct SystemScoreTable {
  std::vector<SystemScore> rows;

  std::vector<double> metric_scores() const;
  std::vector<double> judgment_scores() const;

  friend bool operator==(const SystemScoreTable&,
                         const SystemScoreTable&) = default;
};

// "system_id<TAB>metric_score<TAB>judgment_score" rows; a first row whose
// scores do not parse as numbers is taken as a header. Duplicate system ids
// are rejected.
SystemScoreTable LoadSystemScores(std::istream& in,
                                  const std::string& origin = "<scores>");
SystemScoreTable ReadSystemScoresFile(const std::string& path);

// Sample Pearson correlation. nullopt when the lengths differ, fewer than
// two points are given, or either series is constant.
std::optional<double> PearsonR(std::span<const double> xs,
                               std::span<const double> ys);

double Median(std::vector<double> values);

struct OutlierResult {
  SystemScoreTable kept;
  std::vector<SystemScore> removed;
  bool degenerate_mad = false;  // MAD was zero; nothing removed
};

// Drops systems whose judgment score has robust z-score
// |x - median| / (1.483 * MAD) above `cutoff`, repeating on the survivors
// until nothing more is removed. Tables with fewer than three rows are
// returned unchanged.
OutlierResult RemoveOutliers(const SystemScoreTable& table,
                             double cutoff = kDefaultOutlierCutoff);

struct CorrelationReport {
  std::size_t n_used = 0;
  std::size_t n_removed = 0;
  std::vector<std::string> removed_systems;
  std::optional<double> r;
  bool degenerate_mad = false;
};

CorrelationReport CorrelateSystems(const SystemScoreTable& table,
                                   bool remove_outliers,
                                   double cutoff = kDefaultOutlierCutoff);

}  // namespace grammeval

#endif  // GRAMMEVAL_STATS_HPP_
