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

// Machine-readable report formats. Undefined quantities are written "NA".

#ifndef GRAMMEVAL_REPORT_HPP_
#define GRAMMEVAL_REPORT_HPP_

#include <string>
#include <string_view>

#include "grammeval/gei.hpp"
#include "grammeval/json_util.hpp"
#include "grammeval/scoring.hpp"
#include "grammeval/stats.hpp"

namespace grammeval {

inline constexpr const char* kToolVersion = "0.1.0";

// Lower-case hex SHA-256 of `bytes`.
std::string Sha256Hex(std::string_view bytes);

struct Provenance {
  std::string tool_version = kToolVersion;
  std::string rules_sha256;
};

Json ScoreReportJson(const CorpusReport& report, const Provenance& prov);

// rule<TAB>applicable<TAB>satisfied<TAB>ratio, then a final corpus_score row.
std::string ScoreReportTsv(const CorpusReport& report);

// sent_id<TAB>score, one row per sentence.
std::string SegmentScoresTsv(const CorpusReport& report);

Json GeiReportJson(const PRReport& report, const Provenance& prov);

Json CorrelationReportJson(const CorrelationReport& report,
                           bool outliers_removed, double cutoff);

}  // namespace grammeval

#endif  // GRAMMEVAL_REPORT_HPP_
