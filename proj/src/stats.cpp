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

#include "grammeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "grammeval/error.hpp"
#include "text_util.hpp"

namespace grammeval {

std::vector<double> SystemScoreTable::metric_scores() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.metric_score);
  return out;
}

std::vector<double> SystemScoreTable::judgment_scores() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.judgment_score);
  return out;
}

SystemScoreTable LoadSystemScores(std::istream& in, const std::string& origin) {
  SystemScoreTable table;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::StripCr(raw);
    if (detail::Trim(line).empty() || line.front() == '#') continue;
    const bool header_allowed = std::exchange(first_row, false);
    const auto cols = detail::Split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError(origin, line_no,
                       "expected system_id, metric_score and judgment_score");
    }
    const auto metric = detail::ParseDouble(cols[1]);
    const auto judgment = detail::ParseDouble(cols[2]);
    if (!metric || !judgment) {
      if (header_allowed) continue;
      throw ParseError(origin, line_no, "score is not a number");
    }
    std::string id(detail::Trim(cols[0]));
    if (!seen.insert(id).second) {
      throw ParseError(origin, line_no, "duplicate system id '" + id + "'");
    }
    table.rows.push_back({std::move(id), *metric, *judgment});
  }
  return table;
}

SystemScoreTable ReadSystemScoresFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return LoadSystemScores(in, path);
}

std::optional<double> PearsonR(std::span<const double> xs,
                               std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

OutlierResult RemoveOutliers(const SystemScoreTable& table, double cutoff) {
  OutlierResult result{table, {}, false};
  while (result.kept.rows.size() >= 3) {
    const auto scores = result.kept.judgment_scores();
    const double median = Median(scores);
    std::vector<double> deviations;
    deviations.reserve(scores.size());
    for (double s : scores) deviations.push_back(std::abs(s - median));
    const double mad = Median(deviations);
    if (mad <= 0.0) {
      result.degenerate_mad = true;
      break;
    }
    const double scale = kMadConsistency * mad;
    std::vector<SystemScore> kept;
    bool removed_any = false;
    for (const auto& row : result.kept.rows) {
      if (std::abs(row.judgment_score - median) / scale > cutoff) {
        result.removed.push_back(row);
        removed_any = true;
      } else {
        kept.push_back(row);
      }
    }
    if (!removed_any) break;
    result.kept.rows = std::move(kept);
  }
  return result;
}

CorrelationReport CorrelateSystems(const SystemScoreTable& table,
                                   bool remove_outliers, double cutoff) {
  CorrelationReport report;
  SystemScoreTable used = table;
  if (remove_outliers) {
    OutlierResult o = RemoveOutliers(table, cutoff);
    report.degenerate_mad = o.degenerate_mad;
    for (const auto& row : o.removed) report.removed_systems.push_back(row.system_id);
    used = std::move(o.kept);
  }
  report.n_used = used.rows.size();
  report.n_removed = table.rows.size() - used.rows.size();
  const auto xs = used.metric_scores();
  const auto ys = used.judgment_scores();
  report.r = PearsonR(xs, ys);
  return report;
}

}  // namespace grammeval
