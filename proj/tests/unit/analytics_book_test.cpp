// Copyright 2026 The Novelscope Authors.
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

#include "novelscope/analytics_book.hpp"

#include <numeric>

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/linguistic.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

const Lexicons& lex() { return Lexicons::bundled(); }

std::vector<Sentence> tagged_sentences(std::string_view text) {
  std::vector<Sentence> out;
  for (auto& p : split_sentences(tokenize(text, lex()))) {
    for (auto& s : p.sentences) {
      pos_tag(s, lex());
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Counts derived by hand: proper nouns are not complex words, "plays" is
// familiar through its lemma, and the Spache list lacks "wonderful".
TEST(Readability, CountsForAHandCheckedSnippet) {
  const auto c = readability_counts(
      tagged_sentences("My friend Alexander is a wonderful musician. He plays the guitar each day."), lex());
  EXPECT_EQ(c.words, 13);
  EXPECT_EQ(c.sentences, 2);
  EXPECT_EQ(c.syllables, 21);
  EXPECT_EQ(c.characters, 60);
  EXPECT_EQ(c.complex_words, 2);
  EXPECT_EQ(c.polysyllables, 3);
  EXPECT_EQ(c.dale_chall_unfamiliar, 3);
  EXPECT_EQ(c.spache_unfamiliar, 4);
  ASSERT_EQ(c.linsear_windows.size(), 1u);
}

TEST(Readability, PossessiveMarkersAreNotWords) {
  const auto c = readability_counts(tagged_sentences("Tom's cat sat."), lex());
  EXPECT_EQ(c.words, 3);
}

TEST(Readability, EmptyInputLeavesEveryMetricUndefined) {
  const auto scores = readability_scores(ReadabilityCounts{});
  ASSERT_EQ(scores.size(), kReadabilityMetrics.size());
  for (const auto& [name, value] : scores) EXPECT_FALSE(value.has_value()) << name;
}

TEST(Readability, FormulasFromCounts) {
  ReadabilityCounts c;
  c.words = 100;
  c.sentences = 5;
  c.syllables = 130;
  c.characters = 450;
  c.complex_words = 10;
  c.polysyllables = 12;
  c.dale_chall_unfamiliar = 4;
  c.spache_unfamiliar = 6;
  c.linsear_windows = {30.0};
  const auto s = readability_scores(c);
  EXPECT_NEAR(*s.at("flesch_reading_ease"), 206.835 - 1.015 * 20 - 84.6 * 1.3, 1e-9);
  EXPECT_NEAR(*s.at("ari"), 4.71 * 4.5 + 0.5 * 20 - 21.43, 1e-9);
  EXPECT_NEAR(*s.at("coleman_liau"), 0.0588 * 450 - 0.296 * 5 - 15.8, 1e-9);
  EXPECT_NEAR(*s.at("gunning_fog"), 0.4 * (20 + 10), 1e-9);
  EXPECT_NEAR(*s.at("smog"), 1.043 * std::sqrt(12 * 30.0 / 5) + 3.1291, 1e-9);
  EXPECT_NEAR(*s.at("dale_chall"), 0.1579 * 4 + 0.0496 * 20, 1e-9);
  EXPECT_NEAR(*s.at("spache"), 0.121 * 20 + 0.082 * 6 + 0.659, 1e-9);
  EXPECT_NEAR(*s.at("linsear_write"), 30.0, 1e-9);
}

TEST(Readability, DaleChallAddsConstantAboveFivePercent) {
  ReadabilityCounts c;
  c.words = 100;
  c.sentences = 10;
  c.syllables = 120;
  c.characters = 400;
  c.dale_chall_unfamiliar = 6;
  c.linsear_windows = {10.0};
  EXPECT_NEAR(*readability_scores(c).at("dale_chall"), 0.1579 * 6 + 0.0496 * 10 + 3.6365, 1e-9);
}

AnnotatedBook annotated(const std::string& text) {
  AnnotatedBook book = testing::raw_book("t", text);
  annotate_text(book, lex());
  return book;
}

TEST(Vocabulary, LemmaCountsUseLemmas) {
  const auto counts = lemma_counts(annotated("The cats ran. A cat runs, 42 times!"));
  EXPECT_EQ(counts.counts.at("cat"), 2);
  EXPECT_FALSE(counts.counts.contains("42"));
  EXPECT_EQ(counts.total, std::accumulate(counts.counts.begin(), counts.counts.end(), std::int64_t{0},
                                          [](std::int64_t s, const auto& kv) { return s + kv.second; }));
}

TEST(Vocabulary, RatiosAgainstTheCorpus) {
  LemmaCounts corpus;
  corpus.counts = {{"whale", 10}, {"sea", 40}, {"ship", 30}, {"tea", 20}};
  corpus.total = 100;
  LemmaCounts book;
  book.counts = {{"whale", 8}, {"sea", 10}, {"ship", 2}, {"oddword", 5}};
  book.total = 25;
  const auto v = representative_vocabulary(book, corpus, 10, 2);
  ASSERT_EQ(v.most.size(), 2u);
  EXPECT_EQ(v.most[0].word, "whale");
  EXPECT_DOUBLE_EQ(v.most[0].ratio, (8.0 / 25) / (10.0 / 100));
  EXPECT_EQ(v.most[0].count, 8);
  EXPECT_EQ(v.most[1].word, "sea");
  ASSERT_EQ(v.least.size(), 2u);
  EXPECT_EQ(v.least[0].word, "ship");
  EXPECT_EQ(v.missing, (std::vector<std::string>{"tea"}));

  const auto top2 = representative_vocabulary(book, corpus, 2, 5);
  EXPECT_EQ(top2.most.size(), 2u);
  EXPECT_TRUE(top2.missing.empty());
}

TEST(Vocabulary, EmptyModelsAreErrors) {
  LemmaCounts empty;
  LemmaCounts some;
  some.counts = {{"a", 1}};
  some.total = 1;
  EXPECT_THROW(representative_vocabulary(some, empty), Error);
  EXPECT_THROW(representative_vocabulary(empty, some), Error);
}

TEST(PartsOfSpeech, SharesOverTheEightCategories) {
  const auto shares = pos_distribution(annotated("Oh, she quickly ran home and ate in the big kitchen."));
  ASSERT_EQ(shares.size(), kAnalyzedPos.size());
  double total = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    EXPECT_EQ(shares[i].tag, kAnalyzedPos[i]);
    total += shares[i].percent;
  }
  EXPECT_NEAR(total, 100.0, 1e-9);
}

TEST(PartsOfSpeech, UndefinedWithoutTags) {
  try {
    pos_distribution(AnnotatedBook{});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
  }
}

TEST(GenderShares, PercentagesAmongKnownGenders) {
  std::vector<CharacterRecord> cs(5);
  cs[0].gender = Gender::kMale;
  cs[1].gender = Gender::kMale;
  cs[2].gender = Gender::kMale;
  cs[3].gender = Gender::kFemale;
  const auto shares = character_gender_shares(cs);
  EXPECT_EQ(shares.male, 3);
  EXPECT_EQ(shares.female, 1);
  EXPECT_EQ(shares.unknown, 1);
  EXPECT_DOUBLE_EQ(*shares.male_percent, 75.0);
  EXPECT_DOUBLE_EQ(*shares.female_percent, 25.0);
  EXPECT_FALSE(character_gender_shares({}).male_percent);
}

}  // namespace
}  // namespace novelscope
