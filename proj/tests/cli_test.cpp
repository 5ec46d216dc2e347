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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "grammeval/cli.hpp"
#include "grammeval/json_util.hpp"
#include "grammeval/report.hpp"
#include "test_support.hpp"

namespace grammeval {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "grammeval");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory per test case.
class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : dir_(fs::temp_directory_path() / ("grammeval-cli-" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string operator/(const std::string& file) const { return (dir_ / file).string(); }

 private:
  fs::path dir_;
};

TEST_CASE("usage errors exit 2") {
  CHECK(Cli({}).code == kExitUsage);
  CHECK(Cli({"frobnicate"}).code == kExitUsage);
  CHECK(Cli({"score", "--bogus"}).code == kExitUsage);
  CHECK(Cli({"correlate", DataPath("examples/systems.tsv"), "--cutoff", "-1"}).code == kExitUsage);
  const Run r = Cli({"extract-rules", "/nonexistent/tb.conllu", "-o", "/tmp/x.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("/nonexistent/tb.conllu") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = Cli({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("extract-rules") != std::string::npos);
  CHECK(Cli({"score", "--help"}).code == kExitOk);
}

TEST_CASE("invalid data exits 1") {
  Scratch tmp("bad");
  {
    std::ofstream(tmp / "bad.conllu") << "1\ta\ta\tX\t_\t_\t0\troot\n\n";
  }
  const Run r = Cli({"extract-rules", tmp / "bad.conllu", "-o", tmp / "r.json"});
  CHECK(r.code == kExitDataError);
  CHECK(r.err.find("bad.conllu:1") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "r.json"));
}

TEST_CASE("invalid thresholds are rejected before writing") {
  Scratch tmp("flags");
  const Run r = Cli({"extract-rules", DataPath("examples/de_agreement.conllu"), "-o",
                     tmp / "r.json", "--agree-threshold", "1.5"});
  CHECK(r.code == kExitUsage);
  CHECK_FALSE(fs::exists(tmp / "r.json"));
}

TEST_CASE("extract-rules then score on the sample") {
  Scratch tmp("pipeline");
  const Run ex = Cli({"extract-rules", DataPath("sample/de_sample.conllu"), "-o",
                      tmp / "rules.json", "--language", "de", "--schema", "SUD"});
  REQUIRE(ex.code == kExitOk);
  CHECK(ex.out.find("sentences: 1000\n") != std::string::npos);
  CHECK(ex.out.find("agreement_rules: ") != std::string::npos);
  const std::string rules = Slurp(tmp / "rules.json");
  CHECK(rules.find("\"dep_pos\": \"ADJ\"") != std::string::npos);

  const Run sc = Cli({"score", "--rules", tmp / "rules.json",
                      DataPath("sample/de_sample.conllu"), "-o", tmp / "report", "--segments"});
  REQUIRE(sc.code == kExitOk);
  const Json report = Json::parse(Slurp(tmp / "report.json"));
  CHECK(report["rules_sha256"] == Sha256Hex(rules));
  const double score = report["corpus_score"].get<double>();
  CHECK(score >= 0.9);
  CHECK(score <= 1.0);
  CHECK(fs::exists(tmp / "report.tsv"));
  CHECK(fs::exists(tmp / "report.segments.tsv"));

  // More jobs, same bytes.
  REQUIRE(Cli({"extract-rules", DataPath("sample/de_sample.conllu"), "-o", tmp / "rules4.json",
               "--language", "de", "--schema", "SUD", "--jobs", "4"})
              .code == kExitOk);
  CHECK(Slurp(tmp / "rules4.json") == rules);
  REQUIRE(Cli({"score", "--rules", tmp / "rules.json", DataPath("sample/de_sample.conllu"),
               "-o", tmp / "report4", "--segments", "--jobs", "3"})
              .code == kExitOk);
  CHECK(Slurp(tmp / "report4.json") == Slurp(tmp / "report.json"));
  CHECK(Slurp(tmp / "report4.segments.tsv") == Slurp(tmp / "report.segments.tsv"));
}

TEST_CASE("empty treebank gives an empty rule file") {
  Scratch tmp("empty");
  { std::ofstream(tmp / "empty.conllu"); }
  REQUIRE(Cli({"extract-rules", tmp / "empty.conllu", "-o", tmp / "r.json"}).code == kExitOk);
  const Json j = Json::parse(Slurp(tmp / "r.json"));
  CHECK(j["agreement"].empty());
  CHECK(j["assignment"].empty());
}

TEST_CASE("score on the worked example") {
  Scratch tmp("worked");
  const Run r = Cli({"score", "--rules", DataPath("examples/de_agreement_rules.json"),
                     DataPath("examples/de_agreement.conllu"), "-o", tmp / "out", "--segments"});
  REQUIRE(r.code == kExitOk);
  CHECK(Slurp(tmp / "out.segments.tsv") == "sent_id\tscore\ns1\t1.000000\ns2\t0.714286\n");
  CHECK(r.err.empty());
}

TEST_CASE("score warns when no rule label occurs in the input") {
  Scratch tmp("mismatch");
  const Run r = Cli({"score", "--rules", DataPath("examples/de_agreement_rules.json"),
                     DataPath("examples/el_perturb.conllu"), "-o", tmp / "out"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(Json::parse(Slurp(tmp / "out.json"))["corpus_score"] == "NA");
}

TEST_CASE("perturb is reproducible") {
  Scratch tmp("perturb");
  auto run = [&](const std::string& tag, const std::string& jobs) {
    return Cli({"perturb", DataPath("sample/de_sample.conllu"), "--lexicon",
                DataPath("sample/de_sample.unimorph.tsv"), "--mapping",
                DataPath("feature_map.tsv"), "--seed", "7", "--concat", "-o",
                tmp / (tag + ".conllu"), "--manifest", tmp / (tag + ".tsv"), "--jobs", jobs});
  };
  const Run a = run("a", "1");
  REQUIRE(a.code == kExitOk);
  CHECK(a.out.find("coverage_percent: ") != std::string::npos);
  REQUIRE(run("b", "4").code == kExitOk);
  CHECK(Slurp(tmp / "a.conllu") == Slurp(tmp / "b.conllu"));
  CHECK(Slurp(tmp / "a.tsv") == Slurp(tmp / "b.tsv"));
}

TEST_CASE("perturb with a missing lexicon") {
  Scratch tmp("nolex");
  const Run r = Cli({"perturb", DataPath("examples/el_perturb.conllu"), "--lexicon",
                     tmp / "missing.tsv", "-o", tmp / "out.conllu"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("missing.tsv") != std::string::npos);
}

TEST_CASE("gei-eval on the trace fixtures") {
  const std::string rules = DataPath("examples/gei_rules.json");
  struct Expect {
    const char* name;
    double tp, fp;
    int fn;
  };
  for (const Expect& e : {Expect{"both", 2, 0, 0}, Expect{"neither", 0, 1, 0},
                          Expect{"one", 1, 0, 0}}) {
    CAPTURE(e.name);
    const Run r = Cli({"gei-eval", "--rules", rules,
                       DataPath(std::string("examples/gei_") + e.name + ".conllu")});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["tp"].get<double>() == e.tp);
    CHECK(j["fp"].get<double>() == e.fp);
    CHECK(j["fn"].get<int>() == e.fn);
  }
  const Run side = Cli({"gei-eval", "--rules", rules, DataPath("examples/gei_one.conllu"),
                        "--gold", DataPath("examples/gei_one.gold.tsv")});
  REQUIRE(side.code == kExitOk);
  CHECK(Json::parse(side.out)["tp"].get<double>() == 1.0);
}

TEST_CASE("gei-eval rejects gold marks for unknown tokens") {
  Scratch tmp("gold");
  { std::ofstream(tmp / "gold.tsv") << "one\t9\n"; }
  const Run r = Cli({"gei-eval", "--rules", DataPath("examples/gei_rules.json"),
                     DataPath("examples/gei_one.conllu"), "--gold", tmp / "gold.tsv"});
  CHECK(r.code == kExitDataError);
}

TEST_CASE("correlate") {
  Scratch tmp("corr");
  const Run r = Cli({"correlate", DataPath("examples/systems.tsv"), "--remove-outliers",
                     "-o", tmp / "c.json"});
  REQUIRE(r.code == kExitOk);
  CHECK(Slurp(tmp / "c.json") == r.out);
  const Json j = Json::parse(r.out);
  CHECK(j["n_removed"] == 1);
  CHECK(j["removed_systems"][0] == "sys-e");
}

}  // namespace
}  // namespace grammeval
