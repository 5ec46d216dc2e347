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

#include <fstream>
#include <iterator>

#include "grammeval/json_util.hpp"
#include "grammeval/rules.hpp"

namespace grammeval {
namespace {

Json ConfigToJson(const ExtractionConfig& c) {
  return Json{{"agree_threshold", c.agree_threshold},
              {"agree_coverage", c.agree_coverage},
              {"kl_threshold", c.kl_threshold},
              {"min_relation_count", c.min_relation_count},
              {"value_inclusion_threshold", c.value_inclusion_threshold},
              {"coarse_deprel", c.coarse_deprel}};
}

template <typename T>
T Field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw DataError(std::string("rule file: missing field '") + name + "'");
  }
  try {
    return obj.at(name).get<T>();
  } catch (const Json::exception&) {
    throw DataError(std::string("rule file: field '") + name +
                    "' has the wrong type");
  }
}

ExtractionConfig ConfigFromJson(const Json& j) {
  ExtractionConfig c;
  c.agree_threshold = Field<double>(j, "agree_threshold");
  c.agree_coverage = Field<double>(j, "agree_coverage");
  c.kl_threshold = Field<double>(j, "kl_threshold");
  c.min_relation_count = Field<std::int64_t>(j, "min_relation_count");
  c.value_inclusion_threshold = Field<double>(j, "value_inclusion_threshold");
  if (j.contains("coarse_deprel")) c.coarse_deprel = Field<bool>(j, "coarse_deprel");
  c.Validate();
  return c;
}

}  // namespace

std::string SaveRules(const RuleSet& rs) {
  Json agreement = Json::array();
  for (const auto& r : rs.agreement) {
    agreement.push_back({{"dep_pos", r.dep_pos},
                         {"head_pos", r.head_pos},
                         {"deprel", r.deprel},
                         {"feature", r.feature},
                         {"support", r.support},
                         {"agree_fraction", r.agree_fraction}});
  }
  Json assignment = Json::array();
  for (const auto& r : rs.assignment) {
    assignment.push_back({{"target_pos", r.target_pos},
                          {"other_pos", r.other_pos},
                          {"deprel", r.deprel},
                          {"side", SideName(r.side)},
                          {"feature", r.feature},
                          {"allowed_values", r.allowed_values},
                          {"kl", r.kl},
                          {"support", r.support}});
  }
  const Json doc{{"version", kRuleFileVersion},
                 {"language", rs.language},
                 {"schema", rs.schema},
                 {"config", ConfigToJson(rs.config)},
                 {"agreement", std::move(agreement)},
                 {"assignment", std::move(assignment)}};
  return DumpFixed(doc);
}

void SaveRules(const RuleSet& rs, std::ostream& out) { out << SaveRules(rs); }

RuleSet LoadRules(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("rule file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("rule file: top level must be an object");
  const auto version = Field<int>(doc, "version");
  if (version != kRuleFileVersion) {
    throw DataError("rule file: unsupported version " + std::to_string(version));
  }

  RuleSet rs;
  rs.language = Field<std::string>(doc, "language");
  rs.schema = Field<std::string>(doc, "schema");
  rs.config = ConfigFromJson(Field<Json>(doc, "config"));
  for (const auto& r : Field<Json>(doc, "agreement")) {
    AgreementRule rule{Field<std::string>(r, "dep_pos"),
                       Field<std::string>(r, "head_pos"),
                       Field<std::string>(r, "deprel"),
                       Field<std::string>(r, "feature"),
                       Field<std::int64_t>(r, "support"),
                       Field<double>(r, "agree_fraction")};
    if (rule.agree_fraction < 0.0 || rule.agree_fraction > 1.0) {
      throw DataError("rule file: agree_fraction out of [0,1] for " + rule.key());
    }
    rs.agreement.push_back(std::move(rule));
  }
  for (const auto& r : Field<Json>(doc, "assignment")) {
    AssignmentRule rule{Field<std::string>(r, "target_pos"),
                        Field<std::string>(r, "other_pos"),
                        Field<std::string>(r, "deprel"),
                        ParseSide(Field<std::string>(r, "side")),
                        Field<std::string>(r, "feature"),
                        Field<std::vector<std::string>>(r, "allowed_values"),
                        Field<double>(r, "kl"),
                        Field<std::int64_t>(r, "support")};
    if (rule.allowed_values.empty()) {
      throw DataError("rule file: empty allowed_values for " + rule.key());
    }
    if (rule.kl < 0.0) {
      throw DataError("rule file: negative kl for " + rule.key());
    }
    rs.assignment.push_back(std::move(rule));
  }
  rs.CheckUnique();
  return rs;
}

RuleSet LoadRules(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return LoadRules(text);
}

RuleSet ReadRulesFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return LoadRules(in);
}

}  // namespace grammeval
