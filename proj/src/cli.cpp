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

#include "grammeval/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "grammeval/conllu.hpp"
#include "grammeval/gei.hpp"
#include "grammeval/noise.hpp"
#include "grammeval/report.hpp"
#include "grammeval/rules.hpp"
#include "grammeval/scoring.hpp"
#include "grammeval/stats.hpp"

namespace grammeval {
namespace {

// Bad invocation: missing input file, out-of-range flag value.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void RequireFile(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw UsageError("input file '" + path + "' does not exist or is not a regular file");
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("error while writing '" + path + "'");
}

struct ExtractArgs {
  std::string treebank;
  std::string output;
  std::string language;
  std::string schema;
  ExtractionConfig cfg;
  int jobs = 1;
};

struct ScoreArgs {
  std::string rules;
  std::string input;
  std::string prefix;
  bool segments = false;
  int jobs = 1;
};

struct PerturbArgs {
  std::string input;
  std::string lexicon;
  std::string mapping;
  std::string output;
  std::string manifest;
  PerturbOptions options;
};

struct GeiArgs {
  std::string rules;
  std::string input;
  std::string gold;
  std::string output;
};

struct CorrelateArgs {
  std::string table;
  std::string output;
  bool remove_outliers = false;
  double cutoff = kDefaultOutlierCutoff;
};

int RunExtract(const ExtractArgs& a, std::ostream& out) {
  try {
    a.cfg.Validate();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  RequireFile(a.treebank);
  const Treebank tb = ReadTreebankFile(a.treebank);
  ExtractionStats stats;
  const RuleSet rs = ExtractRules(tb, a.cfg, a.language, a.schema, a.jobs, &stats);
  WriteFile(a.output, SaveRules(rs));

  const double kept =
      stats.candidate_support == 0
          ? 0.0
          : 100.0 * static_cast<double>(stats.kept_support) /
                static_cast<double>(stats.candidate_support);
  out << "sentences: " << stats.sentences << '\n'
      << "edges: " << stats.edges << '\n'
      << "agreement_rules: " << rs.agreement.size() << '\n'
      << "agreement_candidates: " << stats.agreement_candidates << '\n'
      << "agreement_patterns: " << stats.agreement_patterns << '\n'
      << "agreement_support_kept_percent: " << fmt::format("{:.2f}", kept) << '\n'
      << "assignment_rules: " << rs.assignment.size() << '\n'
      << "assignment_patterns: " << stats.assignment_patterns << '\n'
      << "assignment_patterns_frequent: " << stats.assignment_frequent << '\n'
      << "rules_file: " << a.output << '\n';
  return kExitOk;
}

int RunScore(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  RequireFile(a.rules);
  RequireFile(a.input);
  const std::string rule_text = ReadFile(a.rules);
  const RuleSet rs = LoadRules(rule_text);
  const Treebank tb = ReadTreebankFile(a.input);

  std::set<std::string> rule_labels;
  for (const auto& r : rs.agreement) rule_labels.insert(r.deprel);
  for (const auto& r : rs.assignment) rule_labels.insert(r.deprel);
  std::set<std::string> input_labels;
  for (const auto& s : tb.sentences) {
    for (const auto& t : s.tokens) {
      if (t.head != 0) {
        input_labels.emplace(RelationLabel(t.deprel, rs.config.coarse_deprel));
      }
    }
  }
  bool overlap = false;
  for (const auto& l : rule_labels) overlap = overlap || input_labels.count(l);
  if (!rule_labels.empty() && !input_labels.empty() && !overlap) {
    err << "warning: none of the rule relation labels occur in '" << a.input
        << "'; the rules and the input may use different annotation schemas\n";
  }

  const CorpusReport report = ScoreCorpus(tb, rs, a.segments, a.jobs);
  if (!report.corpus_score) {
    err << "warning: no rule applies anywhere in '" << a.input
        << "'; corpus score is NA\n";
  }
  const Provenance prov{kToolVersion, Sha256Hex(rule_text)};
  WriteFile(a.prefix + ".json", DumpFixed(ScoreReportJson(report, prov)));
  WriteFile(a.prefix + ".tsv", ScoreReportTsv(report));
  if (a.segments) WriteFile(a.prefix + ".segments.tsv", SegmentScoresTsv(report));

  std::size_t applied = 0;
  for (const auto& [key, c] : report.per_rule) applied += c.applicable > 0;
  out << "corpus_score: " << FormatReal(report.corpus_score) << '\n'
      << "rules_applied: " << applied << '/' << report.per_rule.size() << '\n'
      << "sentences: " << report.sentences << '\n'
      << "scored_sentences: " << report.scored_sentences << '\n';
  return kExitOk;
}

int RunPerturb(const PerturbArgs& a, std::ostream& out) {
  RequireFile(a.input);
  RequireFile(a.lexicon);
  if (!a.mapping.empty()) RequireFile(a.mapping);
  const Treebank tb = ReadTreebankFile(a.input);
  const InflectionLexicon lex = ReadUnimorphFile(a.lexicon);
  const FeatureMapping fm =
      a.mapping.empty() ? FeatureMapping::Default() : ReadFeatureMappingFile(a.mapping);
  const PerturbResult result = PerturbTreebank(tb, lex, fm, a.options);
  WriteFile(a.output, SerializeTreebank(result.treebank));
  if (!a.manifest.empty()) WriteFile(a.manifest, FormatManifest(result.records));
  out << "input_sentences: " << result.input_sentences << '\n'
      << "altered_sentences: " << result.altered_sentences() << '\n'
      << "coverage_percent: " << fmt::format("{:.2f}", result.coverage_percent())
      << '\n'
      << "output_sentences: " << result.treebank.sentences.size() << '\n';
  return kExitOk;
}

int RunGei(const GeiArgs& a, std::ostream& out) {
  RequireFile(a.rules);
  RequireFile(a.input);
  if (!a.gold.empty()) RequireFile(a.gold);
  const std::string rule_text = ReadFile(a.rules);
  const RuleSet rs = LoadRules(rule_text);
  const Treebank tb = ReadTreebankFile(a.input);
  const GoldErrors gold =
      a.gold.empty() ? GoldErrorsFromMisc(tb) : ReadGoldErrorsFile(a.gold);
  ValidateGoldErrors(gold, tb);
  const PRReport report = EvaluateGei(tb, gold, rs);
  const std::string json =
      DumpFixed(GeiReportJson(report, {kToolVersion, Sha256Hex(rule_text)}));
  if (!a.output.empty()) WriteFile(a.output, json);
  out << json;
  return kExitOk;
}

int RunCorrelate(const CorrelateArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.cutoff > 0.0)) throw UsageError("--cutoff must be positive");
  RequireFile(a.table);
  const SystemScoreTable table = ReadSystemScoresFile(a.table);
  if (table.rows.size() < 2) {
    err << "warning: fewer than two systems; r is NA\n";
  }
  const CorrelationReport report = CorrelateSystems(table, a.remove_outliers, a.cutoff);
  if (report.degenerate_mad) {
    err << "warning: judgment scores have zero median absolute deviation; "
           "no systems removed\n";
  }
  if (!report.r) err << "warning: correlation undefined; r is NA\n";
  const std::string json =
      DumpFixed(CorrelationReportJson(report, a.remove_outliers, a.cutoff));
  if (!a.output.empty()) WriteFile(a.output, json);
  out << json;
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Rule-based morphosyntactic well-formedness toolkit", "grammeval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ExtractArgs ex;
  auto* extract = app.add_subcommand(
      "extract-rules", "Mine agreement and assignment rules from a treebank");
  extract->add_option("treebank", ex.treebank, "CoNLL-U treebank")->required();
  extract->add_option("-o,--output", ex.output, "Rule file to write")->required();
  extract->add_option("--language", ex.language, "Language label stored in the rule file");
  extract->add_option("--schema", ex.schema, "Annotation schema label, e.g. SUD-2.5");
  extract->add_option("--agree-threshold", ex.cfg.agree_threshold,
                      "Minimum agreement ratio (exclusive)")
      ->capture_default_str();
  extract->add_option("--agree-coverage", ex.cfg.agree_coverage,
                      "Cumulative share of agreement support to keep")
      ->capture_default_str();
  extract->add_option("--kl-threshold", ex.cfg.kl_threshold,
                      "Minimum KL divergence for assignment rules (exclusive)")
      ->capture_default_str();
  extract->add_option("--min-relation-count", ex.cfg.min_relation_count,
                      "Minimum edge count for assignment rules")
      ->capture_default_str();
  extract->add_option("--value-threshold", ex.cfg.value_inclusion_threshold,
                      "Minimum local mass for an allowed value")
      ->capture_default_str();
  extract->add_flag("--coarse-deprel", ex.cfg.coarse_deprel,
                    "Strip relation subtypes before counting");
  extract->add_option("--jobs", ex.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Score parsed text against a rule file");
  score->add_option("--rules", sc.rules, "Rule file")->required();
  score->add_option("input", sc.input, "Parsed text in CoNLL-U")->required();
  score->add_option("-o,--output", sc.prefix,
                    "Report prefix; writes PREFIX.json and PREFIX.tsv")
      ->required();
  score->add_flag("--segments", sc.segments,
                  "Also write per-sentence scores to PREFIX.segments.tsv");
  score->add_option("--jobs", sc.jobs, "Worker threads")->check(CLI::PositiveNumber);

  PerturbArgs pa;
  auto* perturb = app.add_subcommand(
      "perturb", "Create morphologically altered copies of treebank sentences");
  perturb->add_option("input", pa.input, "CoNLL-U treebank")->required();
  perturb->add_option("--lexicon", pa.lexicon, "UniMorph TSV lexicon")->required();
  perturb->add_option("--mapping", pa.mapping,
                      "UD-to-UniMorph mapping TSV (default: built-in)");
  perturb->add_option("-o,--output", pa.output, "CoNLL-U output")->required();
  perturb->add_option("--manifest", pa.manifest, "Alteration manifest TSV");
  perturb->add_option("--seed", pa.options.seed, "Random seed")->capture_default_str();
  perturb->add_flag("--concat", pa.options.concat,
                    "Emit each original followed by its altered copy");
  perturb->add_flag("--keep-gold-feats", pa.options.keep_gold_feats,
                    "Keep the original FEATS on the altered token");
  perturb->add_option("--jobs", pa.options.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  GeiArgs ga;
  auto* gei = app.add_subcommand(
      "gei-eval", "Token-level error identification precision and recall");
  gei->add_option("--rules", ga.rules, "Rule file")->required();
  gei->add_option("input", ga.input, "Parsed text in CoNLL-U")->required();
  gei->add_option("--gold", ga.gold,
                  "Gold errors TSV (sent_id, token_id); default: MISC GoldError=Yes");
  gei->add_option("-o,--output", ga.output, "Also write the JSON report here");

  CorrelateArgs ca;
  auto* correlate = app.add_subcommand(
      "correlate", "Pearson correlation between metric and judgment scores");
  correlate->add_option("table", ca.table,
                        "TSV: system_id, metric_score, judgment_score")
      ->required();
  correlate->add_flag("--remove-outliers", ca.remove_outliers,
                      "Drop outlier systems by robust z-score first");
  correlate->add_option("--cutoff", ca.cutoff, "Robust z-score cutoff")
      ->capture_default_str();
  correlate->add_option("-o,--output", ca.output, "Also write the JSON report here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (extract->parsed()) return RunExtract(ex, out);
    if (score->parsed()) return RunScore(sc, out, err);
    if (perturb->parsed()) return RunPerturb(pa, out);
    if (gei->parsed()) return RunGei(ga, out);
    if (correlate->parsed()) return RunCorrelate(ca, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace grammeval
