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

#include "grammeval/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace grammeval {
namespace {

Json RealOrNa(std::optional<double> v) {
  if (!v) return "NA";
  return *v;
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

Json ScoreReportJson(const CorpusReport& report, const Provenance& prov) {
  Json rules = Json::array();
  for (const auto& [key, c] : report.per_rule) {
    rules.push_back({{"rule", key},
                     {"kind", key.rfind("agree(", 0) == 0 ? "agreement" : "assignment"},
                     {"applicable", c.applicable},
                     {"satisfied", c.satisfied},
                     {"ratio", RealOrNa(c.ratio())},
                     {"weight", c.weight}});
  }
  std::size_t applied = 0;
  for (const auto& [key, c] : report.per_rule) applied += c.applicable > 0;
  return Json{{"tool_version", prov.tool_version},
              {"rules_sha256", prov.rules_sha256},
              {"corpus_score", RealOrNa(report.corpus_score)},
              {"rules_total", report.per_rule.size()},
              {"rules_applied", applied},
              {"sentences", report.sentences},
              {"scored_sentences", report.scored_sentences},
              {"per_rule", std::move(rules)}};
}

std::string ScoreReportTsv(const CorpusReport& report) {
  std::string out = "rule\tapplicable\tsatisfied\tratio\n";
  for (const auto& [key, c] : report.per_rule) {
    out += key + '\t' + std::to_string(c.applicable) + '\t' +
           std::to_string(c.satisfied) + '\t' + FormatReal(c.ratio()) + '\n';
  }
  out += "corpus_score\t\t\t" + FormatReal(report.corpus_score) + '\n';
  return out;
}

std::string SegmentScoresTsv(const CorpusReport& report) {
  std::string out = "sent_id\tscore\n";
  for (const auto& seg : report.segment_scores) {
    out += seg.sent_id + '\t' + FormatReal(seg.score) + '\n';
  }
  return out;
}

Json GeiReportJson(const PRReport& report, const Provenance& prov) {
  return Json{{"tool_version", prov.tool_version},
              {"rules_sha256", prov.rules_sha256},
              {"tp", report.tp},
              {"fp", report.fp},
              {"fn", report.fn},
              {"precision", RealOrNa(report.precision)},
              {"recall", RealOrNa(report.recall)}};
}

Json CorrelationReportJson(const CorrelationReport& report,
                           bool outliers_removed, double cutoff) {
  Json j{{"tool_version", kToolVersion},
         {"n_used", report.n_used},
         {"n_removed", report.n_removed},
         {"removed_systems", report.removed_systems},
         {"r", RealOrNa(report.r)},
         {"outlier_removal", outliers_removed}};
  if (outliers_removed) {
    j["cutoff"] = cutoff;
    j["degenerate_mad"] = report.degenerate_mad;
  }
  return j;
}

}  // namespace grammeval
