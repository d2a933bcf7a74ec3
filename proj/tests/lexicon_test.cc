// Copyright 2026 The adserve Authors.
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

#include "adserve/lexicon.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "adserve/matcher.h"
#include "random_text.h"
#include "test_util.h"

namespace adserve {
namespace {

using Tokens = std::vector<std::string>;

TEST(NormalizeTextTest, StripsMarkupAndCase) {
  EXPECT_EQ(NormalizeText("<b>Camera</b> lens!"), (Tokens{"camera", "lens"}));
  EXPECT_EQ(NormalizeText(""), Tokens{});
}

TEST(NormalizeTextTest, DigitsAndMixedTokens) {
  EXPECT_EQ(NormalizeText("EOS 5D MarkIII 2013"),
            (Tokens{"eos", "5d", "markiii"}));
}

TEST(NormalizeTextTest, DropsScriptsStylesAndEntities) {
  EXPECT_EQ(NormalizeText("<script>var camera = 1;</script>lens"
                          "<style>.tripod{}</style> wedding&amp;gown"),
            (Tokens{"lens", "wedding", "gown"}));
  EXPECT_EQ(NormalizeText("a b c dd"), (Tokens{"dd"}));
}

TEST(NormalizeTextTest, IdempotentOnJoinedOutput) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    Tokens once = NormalizeText(testing::RandomDocument(rng));
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    EXPECT_EQ(NormalizeText(joined), once);
  }
}

TEST(StopwordsTest, BuiltinMatchesDataFile) {
  Stopwords file = Stopwords::Load(testing::DataDir() / "stopwords.txt");
  const Stopwords& builtin = Stopwords::Default();
  EXPECT_EQ(file.size(), builtin.size());
  EXPECT_GE(builtin.size(), 100u);
  for (const char* w : {"the", "and", "with", "about", "yourselves"}) {
    EXPECT_TRUE(builtin.contains(w)) << w;
    EXPECT_TRUE(file.contains(w)) << w;
  }
  EXPECT_FALSE(builtin.contains("camera"));
  EXPECT_THROW(Stopwords::Load("/nonexistent/stopwords.txt"), std::runtime_error);
}

TEST(ExtractKeywordsTest, FrequencyOrder) {
  Lexicon lex;
  Tokens t = NormalizeText("camera camera lens");
  auto got = lex.ExtractKeywords(t, 2);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].term, "camera");
  EXPECT_DOUBLE_EQ(got[0].score, 2.0);
  EXPECT_EQ(got[1].term, "lens");
  EXPECT_DOUBLE_EQ(got[1].score, 1.0);
}

TEST(ExtractKeywordsTest, StopwordsOnly) {
  Lexicon lex;
  Tokens t = NormalizeText("the and of with the");
  EXPECT_TRUE(lex.ExtractKeywords(t, 5).empty());
}

TEST(ExtractKeywordsTest, ZeroKIsRejected) {
  Lexicon lex;
  Tokens t = {"camera"};
  EXPECT_THROW(lex.ExtractKeywords(t, 0), std::invalid_argument);
}

TEST(ExtractKeywordsTest, RepeatedBigramsAndPlurals) {
  Lexicon lex;
  Tokens t = NormalizeText(
      "wedding gown and wedding gown fitting; gowns for brides, bride");
  auto got = lex.ExtractKeywords(t, 10);
  std::map<std::string, double> m;
  for (const auto& s : got) m[s.term] = s.score;
  EXPECT_DOUBLE_EQ(m["wedding gown"], 2.0);
  EXPECT_DOUBLE_EQ(m["gown"], 3.0);
  EXPECT_DOUBLE_EQ(m["bride"], 2.0);
  EXPECT_EQ(m.count("gowns"), 0u);
  EXPECT_EQ(m.count("gown fitting"), 0u);
}

TEST(ExtractKeywordsTest, CorpusDownweightsCommonTerms) {
  std::vector<std::string> docs = {"camera review", "camera lens",
                                   "camera tripod", "wedding"};
  Lexicon lex(Stopwords::Default(), Corpus::FromDocuments(docs));
  Tokens t = NormalizeText("camera wedding");
  auto got = lex.ExtractKeywords(t, 2);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].term, "wedding");
  EXPECT_NEAR(got[0].score, std::log(5.0 / 2.0) + 1.0, 1e-12);
  EXPECT_NEAR(got[1].score, std::log(5.0 / 4.0) + 1.0, 1e-12);
}

TEST(ExtractKeywordsTest, PicstopGolden) {
  Lexicon lex;
  std::string page = testing::ReadFile(testing::FixtureDir() / "pages" / "picstop.txt");
  Tokens tokens = NormalizeText(page);
  auto got = lex.ExtractKeywords(tokens, 5);
  std::istringstream golden(
      testing::ReadFile(testing::GoldenDir() / "picstop_keywords.txt"));
  std::string term;
  double score;
  size_t i = 0;
  std::string line;
  while (std::getline(golden, line)) {
    size_t tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos);
    term = line.substr(0, tab);
    score = std::stod(line.substr(tab + 1));
    ASSERT_LT(i, got.size());
    EXPECT_EQ(got[i].term, term) << "rank " << i;
    EXPECT_DOUBLE_EQ(got[i].score, score) << term;
    ++i;
  }
  EXPECT_EQ(i, got.size());
}

TEST(ExtractKeywordsTest, LengthOrderAndDeterminism) {
  Lexicon lex;
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    Tokens t = NormalizeText(testing::RandomDocument(rng));
    size_t k = 1 + rng() % 8;
    auto a = lex.ExtractKeywords(t, k);
    EXPECT_LE(a.size(), k);
    for (size_t j = 1; j < a.size(); ++j) {
      EXPECT_GE(a[j - 1].score, a[j].score);
    }
    EXPECT_EQ(a, lex.ExtractKeywords(t, k));
  }
}

TEST(PageVectorTest, HandEvaluated) {
  Lexicon lex;
  TermVector v = lex.PageVector("camera camera lens");
  EXPECT_EQ(v.size(), 2u);
  EXPECT_NEAR(v.weight("camera"), 2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(v.weight("lens"), 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_TRUE(lex.PageVector("").empty());
  EXPECT_EQ(lex.PageVector("camera camera lens"), v);
}

TEST(AdVectorTest, HandEvaluated) {
  Lexicon lex;
  Ad ad;
  ad.keywords = {"camera"};
  TermVector v = lex.AdVector(ad);
  EXPECT_EQ(v.size(), 1u);
  EXPECT_NEAR(v.weight("camera"), 1.0, 1e-12);

  EXPECT_TRUE(lex.AdVector(Ad{}).empty());

  Ad w;
  w.keywords = {"wedding"};
  w.title = "wedding photos";
  TermVector wv = lex.AdVector(w);
  EXPECT_NEAR(wv.weight("wedding"), 5.0 / std::sqrt(29.0), 1e-12);
  EXPECT_NEAR(wv.weight("photos"), 2.0 / std::sqrt(29.0), 1e-12);
}

TEST(TermVectorTest, RejectsBadWeights) {
  EXPECT_THROW(TermVector({{"a", -1.0}}), std::invalid_argument);
  EXPECT_THROW(TermVector({{"a", NAN}}), std::invalid_argument);
  EXPECT_TRUE(TermVector({{"a", 0.0}}).empty());
}

TEST(VectorPropertyTest, UnitNormNoStopwords) {
  Lexicon lex;
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::string doc = testing::RandomDocument(rng);
    Ad ad;
    ad.title = doc.substr(0, doc.size() / 2);
    ad.description = doc;
    for (const TermVector& v : {lex.PageVector(doc), lex.AdVector(ad)}) {
      if (v.empty()) continue;
      double s = 0.0;
      for (const auto& [term, w] : v.entries()) {
        s += w * w;
        EXPECT_FALSE(lex.stopwords().contains(term)) << term;
      }
      EXPECT_NEAR(std::sqrt(s), 1.0, 1e-9);
    }
  }
}

}  // namespace
}  // namespace adserve
