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

#include "doctest.h"
#include "grammeval/report.hpp"
#include "test_support.hpp"

namespace grammeval {
namespace {

using testing::DataPath;

TEST_CASE("sha256") {
  CHECK(Sha256Hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(Sha256Hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("fixed-precision JSON") {
  const Json j{{"b", 0.5}, {"a", {1, 2}}, {"c", "x"}, {"d", -0.0000001}, {"e", Json::object()}};
  CHECK(DumpFixed(j) ==
        "{\n"
        "  \"a\": [\n"
        "    1,\n"
        "    2\n"
        "  ],\n"
        "  \"b\": 0.500000,\n"
        "  \"c\": \"x\",\n"
        "  \"d\": 0.000000,\n"
        "  \"e\": {}\n"
        "}\n");
  CHECK(FormatReal(std::nullopt) == "NA");
  CHECK(FormatReal(2.0 / 3.0) == "0.666667");
}

TEST_CASE("score reports for the worked example") {
  const Treebank tb = ReadTreebankFile(DataPath("examples/de_agreement.conllu"));
  const RuleSet rs = ReadRulesFile(DataPath("examples/de_agreement_rules.json"));
  const CorpusReport report = ScoreCorpus(tb, rs, true);

  const Json j = ScoreReportJson(report, {kToolVersion, "feed"});
  CHECK(j["rules_sha256"] == "feed");
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["rules_total"] == 7);
  CHECK(j["rules_applied"] == 7);
  CHECK(j["per_rule"].size() == 7);
  CHECK(j["per_rule"][0]["kind"] == "agreement");
  CHECK(j["per_rule"][6]["kind"] == "assignment");

  const std::string tsv = ScoreReportTsv(report);
  CHECK(tsv.rfind("rule\tapplicable\tsatisfied\tratio\n", 0) == 0);
  CHECK(tsv.find("agree(PRON,AUX,subj):Number\t2\t1\t0.500000\n") != std::string::npos);
  const std::string last = "corpus_score\t\t\t0.857143\n";
  CHECK(tsv.ends_with(last));

  CHECK(SegmentScoresTsv(report) == "sent_id\tscore\ns1\t1.000000\ns2\t0.714286\n");
}

TEST_CASE("undefined values are NA") {
  RuleSet rs;
  rs.agreement.push_back({"X", "Y", "z", "Case", 1, 1.0});
  Treebank tb;
  tb.sentences.push_back(testing::MakeSentence("n", {{"Ja", "INTJ", "_", 0, "root"}}));
  const CorpusReport report = ScoreCorpus(tb, rs, true);
  const Json j = ScoreReportJson(report, {});
  CHECK(j["corpus_score"] == "NA");
  CHECK(j["per_rule"][0]["ratio"] == "NA");
  CHECK(j["rules_applied"] == 0);
  CHECK(SegmentScoresTsv(report) == "sent_id\tscore\nn\tNA\n");

  PRReport pr;
  const Json g = GeiReportJson(pr, {});
  CHECK(g["precision"] == "NA");
  CHECK(g["recall"] == "NA");

  CorrelationReport cr;
  const Json c = CorrelationReportJson(cr, false, 2.5);
  CHECK(c["r"] == "NA");
  CHECK_FALSE(c.contains("cutoff"));
  CHECK(CorrelationReportJson(cr, true, 2.5)["cutoff"] == 2.5);
}

}  // namespace
}  // namespace grammeval
