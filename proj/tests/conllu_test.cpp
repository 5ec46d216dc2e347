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
#include <sstream>

#include "doctest.h"
#include "grammeval/conllu.hpp"
#include "test_support.hpp"

namespace grammeval {
namespace {

using testing::DataPath;

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

constexpr const char* kFiveTokens =
    "# sent_id = a\n"
    "# text = Ich werde es morgen lesen\n"
    "1\tIch\tich\tPRON\t_\tCase=Nom|Number=Sing|Person=1\t2\tsubj\t_\t_\n"
    "2\twerde\twerden\tAUX\t_\tNumber=Sing|Person=3\t0\troot\t_\t_\n"
    "3\tes\tes\tPRON\t_\tCase=Acc\t5\tcomp:obj\t_\t_\n"
    "4\tmorgen\tmorgen\tADV\t_\t_\t5\tmod\t_\t_\n"
    "5\tlesen\tlesen\tVERB\t_\tVerbForm=Inf\t2\tcomp:aux\t_\t_\n"
    "\n";

TEST_CASE("parse a well-formed sentence") {
  const Treebank tb = ParseTreebank(std::string_view(kFiveTokens));
  REQUIRE(tb.sentences.size() == 1);
  const Sentence& s = tb.sentences[0];
  CHECK(s.sent_id == "a");
  CHECK(s.source_text == "Ich werde es morgen lesen");
  REQUIRE(s.tokens.size() == 5);

  const Token& werde = s.token(2);
  CHECK(werde.id == 2);
  CHECK(werde.upos == "AUX");
  CHECK(werde.head == 0);
  CHECK(werde.feats.size() == 2);
  CHECK(*werde.feats.find("Number") == FeatureBundle::ValueSet{"Sing"});
  CHECK(*werde.feats.find("Person") == FeatureBundle::ValueSet{"3"});
  CHECK_FALSE(werde.xpos.has_value());
  CHECK(s.token(4).feats.empty());
}

TEST_CASE("single row maps straight to token fields") {
  const Treebank tb = ParseTreebank(std::string_view(
      "1\tlesen\tlesen\tVERB\t_\t_\t0\troot\t_\t_\n"
      "2\twerde\twerden\tAUX\t_\tNumber=Sing|Person=3\t1\taux\t_\t_\n\n"));
  const Token& t = tb.sentences[0].token(2);
  CHECK(t.upos == "AUX");
  CHECK(t.lemma == "werden");
  CHECK(t.feats.str() == "Number=Sing|Person=3");
  CHECK(t.deprel == "aux");
}

TEST_CASE("feature bundles") {
  SUBCASE("multi-valued and case-insensitive ordering") {
    const auto fb = FeatureBundle::Parse("PronType=Prs|case=Nom|Gender=Masc,Fem");
    CHECK(fb.str() == "case=Nom|Gender=Fem,Masc|PronType=Prs");
    CHECK(*fb.find("Gender") == FeatureBundle::ValueSet{"Fem", "Masc"});
  }
  SUBCASE("underscore is empty") {
    CHECK(FeatureBundle::Parse("_").empty());
    CHECK(FeatureBundle().str() == "_");
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(FeatureBundle::Parse("Case"), DataError);
    CHECK_THROWS_AS(FeatureBundle::Parse("=Nom"), DataError);
    CHECK_THROWS_AS(FeatureBundle::Parse("Case="), DataError);
    CHECK_THROWS_AS(FeatureBundle::Parse("Case=Nom,"), DataError);
    CHECK_THROWS_AS(FeatureBundle::Parse("Case=Nom|Case=Acc"), DataError);
  }
  SUBCASE("set with an empty value set removes the feature") {
    auto fb = FeatureBundle::Parse("Case=Nom|Number=Sing");
    fb.set("Case", {});
    CHECK(fb.str() == "Number=Sing");
  }
  SUBCASE("intersection") {
    CHECK(Intersects({"Masc", "Fem"}, {"Fem"}));
    CHECK_FALSE(Intersects({"Masc"}, {"Fem", "Neut"}));
    CHECK_FALSE(Intersects({}, {"Fem"}));
  }
}

TEST_CASE("misc column") {
  const auto misc = ParseMisc("SpaceAfter=No|Altered=Yes|Flag");
  REQUIRE(misc.size() == 3);
  CHECK(misc[2].key == "Flag");
  CHECK_FALSE(misc[2].value.has_value());
  CHECK(FormatMisc(misc) == "SpaceAfter=No|Altered=Yes|Flag");
  CHECK(FormatMisc({}) == "_");
  CHECK(ParseMisc("_").empty());
}

TEST_CASE("malformed rows report the line") {
  SUBCASE("column count") {
    try {
      ParseTreebank(std::string_view("# sent_id = x\n1\ta\ta\tX\t_\t_\t0\troot\t_\n\n"), "t.conllu");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("t.conllu:2") != std::string::npos);
    }
  }
  SUBCASE("non-integer head") {
    CHECK_THROWS_AS(
        ParseTreebank(std::string_view("1\ta\ta\tX\t_\t_\tzero\troot\t_\t_\n\n")),
        ParseError);
  }
  SUBCASE("bad feature column") {
    CHECK_THROWS_AS(
        ParseTreebank(std::string_view("1\ta\ta\tX\t_\tCase\t0\troot\t_\t_\n\n")),
        ParseError);
  }
}

TEST_CASE("structural errors name the sentence") {
  auto expect_structure_error = [](const char* text) {
    try {
      ParseTreebank(std::string_view(text));
      FAIL("expected a structure error");
    } catch (const StructureError& e) {
      CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
  };
  SUBCASE("self loop") {
    expect_structure_error(
        "# sent_id = bad\n"
        "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\t_\t_\t2\tdep\t_\t_\n\n");
  }
  SUBCASE("two roots") {
    expect_structure_error(
        "# sent_id = bad\n"
        "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n\n");
  }
  SUBCASE("cycle") {
    expect_structure_error(
        "# sent_id = bad\n"
        "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\t_\t_\t3\tdep\t_\t_\n"
        "3\tc\tc\tX\t_\t_\t2\tdep\t_\t_\n\n");
  }
  SUBCASE("head out of range") {
    expect_structure_error(
        "# sent_id = bad\n"
        "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\t_\t_\t7\tdep\t_\t_\n\n");
  }
  SUBCASE("duplicate sent_id") {
    CHECK_THROWS_AS(ParseTreebank(std::string_view(
                        "# sent_id = bad\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n"
                        "# sent_id = bad\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n")),
                    StructureError);
  }
}

TEST_CASE("multiword ranges and empty nodes are kept aside") {
  constexpr const char* kText =
      "# sent_id = mw\n"
      "# text = Στο σπίτι\n"
      "1-2\tΣτο\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tσε\tσε\tADP\t_\t_\t3\tcase\t_\t_\n"
      "2\tτο\tο\tDET\t_\tCase=Acc\t3\tdet\t_\t_\n"
      "3\tσπίτι\tσπίτι\tNOUN\t_\tCase=Acc\t0\troot\t_\t_\n"
      "3.1\tείναι\tείμαι\tAUX\t_\t_\t_\t_\t3:cop\t_\n"
      "\n";
  const Treebank tb = ParseTreebank(std::string_view(kText));
  const Sentence& s = tb.sentences[0];
  CHECK(s.tokens.size() == 3);
  REQUIRE(s.multiword_ranges.size() == 1);
  CHECK(s.multiword_ranges[0].start == 1);
  CHECK(s.multiword_ranges[0].end == 2);
  CHECK(s.multiword_ranges[0].form == "Στο");
  CHECK(s.empty_nodes.size() == 1);
  CHECK(s.in_multiword(2));
  CHECK_FALSE(s.in_multiword(3));
  CHECK(SerializeTreebank(tb) == kText);
}

TEST_CASE("serialization") {
  CHECK(SerializeTreebank(Treebank{}).empty());

  Treebank tb = ParseTreebank(std::string_view(kFiveTokens));
  tb.sentences[0].tokens[0].misc.push_back({"Altered", "Yes"});
  const std::string out = SerializeTreebank(tb);
  CHECK(out.find("\t2\tsubj\t_\tAltered=Yes\n") != std::string::npos);

  SUBCASE("changed sent_id and text are rewritten in place") {
    tb.sentences[0].sent_id = "b";
    tb.sentences[0].source_text = "neu";
    const std::string text = SerializeTreebank(tb);
    CHECK(text.rfind("# sent_id = b\n# text = neu\n1\t", 0) == 0);
  }
  SUBCASE("dropping the text removes its comment") {
    tb.sentences[0].source_text.reset();
    CHECK(SerializeTreebank(tb).find("# text") == std::string::npos);
  }
}

TEST_CASE("bundled fixtures are serialization fixed points") {
  for (const char* rel : {"examples/de_agreement.conllu", "examples/el_perturb.conllu",
                          "sample/de_sample.conllu"}) {
    CAPTURE(rel);
    const std::string path = DataPath(rel);
    const std::string bytes = Slurp(path);
    REQUIRE_FALSE(bytes.empty());
    CHECK(SerializeTreebank(ReadTreebankFile(path)) == bytes);
  }
}

TEST_CASE("CRLF input parses like LF input") {
  std::string crlf;
  for (char c : std::string(kFiveTokens)) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  CHECK(ParseTreebank(std::string_view(crlf)) == ParseTreebank(std::string_view(kFiveTokens)));
}

TEST_CASE("edges") {
  const Treebank tb = ParseTreebank(std::string_view(kFiveTokens));
  const auto edges = Edges(tb.sentences[0]);
  CHECK(edges.size() == 4);

  const Treebank example = ReadTreebankFile(DataPath("examples/de_agreement.conllu"));
  bool found = false;
  for (const auto& e : Edges(example.sentences[0])) {
    found = found || (e.dependent->form == "Ich" && e.head->form == "werde" &&
                      e.deprel == "subj");
  }
  CHECK(found);

  const Treebank single =
      ParseTreebank(std::string_view("1\tJa\tja\tINTJ\t_\t_\t0\troot\t_\t_\n\n"));
  CHECK(Edges(single.sentences[0]).empty());
}

TEST_CASE("relation labels") {
  CHECK(RelationLabel("comp:obj", false) == "comp:obj");
  CHECK(RelationLabel("comp:obj", true) == "comp");
  CHECK(RelationLabel("mod@relcl", true) == "mod");
  CHECK(RelationLabel("subj", true) == "subj");
}

TEST_CASE("sentence keys fall back to position") {
  Treebank tb = ParseTreebank(std::string_view(
      "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n"
      "# sent_id = named\n1\tb\tb\tX\t_\t_\t0\troot\t_\t_\n\n"));
  CHECK(SentenceKey(tb.sentences[0], 0) == "1");
  CHECK(SentenceKey(tb.sentences[1], 1) == "named");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(ReadTreebankFile(DataPath("does/not/exist.conllu")), IoError);
}

}  // namespace
}  // namespace grammeval
