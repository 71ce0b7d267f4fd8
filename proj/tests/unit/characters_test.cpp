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

#include "novelscope/characters.hpp"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/linguistic.hpp"
#include "novelscope/quotes.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

const Lexicons& lex() { return Lexicons::bundled(); }

const std::string kStory =
    "CHAPTER I\n\n"
    "Yesterday Emma Woodhouse walked to the village. Then Emma met Mr. Elton near the church.\n\n"
    "\"Good morning,\" said Mr. Elton.\n\n"
    "\"Good morning to you,\" replied Emma.\n\n"
    "CHAPTER II\n\n"
    "Later Harriet Smith joined them. Harriet smiled at the sky and she laughed. Then Elton bowed "
    "to Harriet and he left. Soon Harriet went home. In the evening Miss Woodhouse wrote a letter.\n";

AnnotatedBook annotated(const std::string& text) {
  AnnotatedBook book = testing::raw_book("t", text);
  annotate_text(book, lex());
  return book;
}

const CharacterRecord* with_alias(const AnnotatedBook& book, const std::string& alias) {
  for (const auto& c : book.characters) {
    if (c.aliases.contains(alias)) return &c;
  }
  return nullptr;
}

TEST(Characters, ClustersAliasesIntoPersons) {
  AnnotatedBook book = annotated(kStory);
  annotate_characters(book, lex());
  ASSERT_EQ(book.characters.size(), 3u);
  EXPECT_NO_THROW(check_invariants(book));
  EXPECT_TRUE(book.meta.has_phase(Phase::kCharacters));

  const auto* emma = with_alias(book, "Emma");
  ASSERT_NE(emma, nullptr);
  EXPECT_TRUE(emma->aliases.contains("Emma Woodhouse"));
  EXPECT_TRUE(emma->aliases.contains("Miss Woodhouse"));
  EXPECT_EQ(emma->count(), 4);
  EXPECT_EQ(emma->gender, Gender::kFemale);

  const auto* elton = with_alias(book, "Mr. Elton");
  ASSERT_NE(elton, nullptr);
  EXPECT_TRUE(elton->aliases.contains("Elton"));
  EXPECT_EQ(elton->count(), 3);
  EXPECT_EQ(elton->gender, Gender::kMale);

  const auto* harriet = with_alias(book, "Harriet");
  ASSERT_NE(harriet, nullptr);
  EXPECT_EQ(harriet->count(), 4);

  // Ranked by mention count.
  EXPECT_EQ(book.characters[0].id, emma->id);
  for (const auto& c : book.characters) {
    for (const Token* t : mentions_of(book, c.id)) EXPECT_EQ(t->character, c.id);
  }
}

TEST(Characters, QuotesGetSpeakers) {
  AnnotatedBook book = annotated(kStory);
  annotate_characters(book, lex());
  ASSERT_EQ(book.quotes.size(), 2u);
  EXPECT_EQ(book.quotes[0].speaker, with_alias(book, "Mr. Elton")->id);
  EXPECT_EQ(book.quotes[1].speaker, with_alias(book, "Emma")->id);
}

TEST(Characters, RareNamesAreDropped) {
  AnnotatedBook book = annotated("Yesterday Bartholomew arrived. Then Bartholomew left. Later Cuthbert came.\n");
  CharacterOptions options;
  options.min_mentions = 2;
  annotate_characters(book, lex(), options);
  ASSERT_EQ(book.characters.size(), 1u);
  EXPECT_EQ(book.characters[0].canonical_name, "Bartholomew");
}

TEST(Characters, RequiresTokens) {
  AnnotatedBook book = testing::raw_book("t", "text");
  try {
    annotate_characters(book, lex());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingPhase);
  }
}

TEST(Characters, GenderVoteOrder) {
  MentionCandidate c;
  c.name_vote = Gender::kFemale;
  EXPECT_EQ(resolve_gender(c), Gender::kFemale);
  c.pronoun_vote = Gender::kMale;
  EXPECT_EQ(resolve_gender(c), Gender::kMale);
  c.honorific_vote = Gender::kFemale;
  EXPECT_EQ(resolve_gender(c), Gender::kFemale);
  EXPECT_EQ(resolve_gender(MentionCandidate{}), Gender::kUnknown);
}

TEST(Characters, PronounCountsAreNonNegativeAndAttributed) {
  AnnotatedBook book = annotated(kStory);
  annotate_characters(book, lex());
  int gendered = 0;
  for (const auto& c : book.characters) {
    EXPECT_GE(c.gcc, 0);
    EXPECT_GE(c.fpcc, 0);
    EXPECT_GE(c.spcc, 0);
    gendered += c.gcc;
  }
  EXPECT_GE(gendered, 1);
}

TEST(Quotes, PairsCurlyMarksWithinParagraphs) {
  AnnotatedBook book = annotated("\xe2\x80\x9cHello,\xe2\x80\x9d she said. \xe2\x80\x9cGo home.\xe2\x80\x9d\n");
  EXPECT_TRUE(extract_quotes(book).empty());
  ASSERT_EQ(book.quotes.size(), 2u);
  const auto tokens = token_list(book);
  EXPECT_EQ(book.quotes[0].start, 0);
  EXPECT_EQ(tokens[static_cast<std::size_t>(book.quotes[0].end)]->text, "\xe2\x80\x9d");
  for (const Token* t : tokens) {
    const bool inside = (t->index >= book.quotes[0].start && t->index <= book.quotes[0].end) ||
                        (t->index >= book.quotes[1].start && t->index <= book.quotes[1].end);
    EXPECT_EQ(t->quote.has_value(), inside) << t->text;
  }
}

TEST(Quotes, ContinuationParagraphsExtendTheQuote) {
  AnnotatedBook book = annotated("\"First part of a long speech.\n\n\"And the second part,\" he said.\n");
  EXPECT_TRUE(extract_quotes(book).empty());
  ASSERT_EQ(book.quotes.size(), 1u);
  EXPECT_EQ(book.quotes[0].start, 0);
  EXPECT_EQ(token_list(book)[static_cast<std::size_t>(book.quotes[0].end)]->text, "\"");
}

TEST(Quotes, UnclosedQuoteEndsAtParagraphWithWarning) {
  AnnotatedBook book = annotated("\"Never closed.\n\nPlain narration.\n");
  const auto warnings = extract_quotes(book);
  ASSERT_EQ(warnings.size(), 1u);
  ASSERT_EQ(book.quotes.size(), 1u);
  EXPECT_EQ(token_list(book)[static_cast<std::size_t>(book.quotes[0].end)]->text, ".");
}

TEST(Quotes, SingleMarksWhenNoDoubleMarks) {
  AnnotatedBook book = annotated("\xe2\x80\x98It's late,\xe2\x80\x99 said Tom.\n");
  extract_quotes(book);
  ASSERT_EQ(book.quotes.size(), 1u);
  EXPECT_EQ(book.quotes[0].start, 0);
}

TEST(Cooccurrence, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::int64_t> sa, sb;
    for (int i = std::uniform_int_distribution<int>(0, 30)(rng); i > 0; --i) sa.insert(rng() % 400);
    for (int i = std::uniform_int_distribution<int>(0, 30)(rng); i > 0; --i) sb.insert(rng() % 400);
    const std::vector<std::int64_t> a(sa.begin(), sa.end()), b(sb.begin(), sb.end());
    const std::int64_t window = std::uniform_int_distribution<std::int64_t>(0, 40)(rng);
    std::int64_t expected = 0;
    for (auto x : a) {
      for (auto y : b) expected += std::abs(x - y) <= window;
    }
    EXPECT_EQ(count_cooccurrences(a, b, window), expected);
  }
}

CharacterRecord record(int id, std::vector<std::int64_t> mentions) {
  CharacterRecord c;
  c.id = id;
  c.canonical_name = "C" + std::to_string(id);
  c.aliases[c.canonical_name] = static_cast<int>(mentions.size());
  c.mentions = std::move(mentions);
  return c;
}

TEST(Network, ThresholdIsStrict) {
  // Six pairs within the window make an edge; five do not.
  const auto a = record(0, {0, 10, 20, 30, 40, 50});
  const auto b = record(1, {1, 11, 21, 31, 41, 51});
  const auto five = record(2, {100, 110, 120, 130, 140});
  const auto five_b = record(3, {101, 111, 121, 131, 141});
  const auto net = build_interaction_network({a, b, five, five_b}, 1, 5);
  ASSERT_EQ(net.nodes.size(), 4u);
  ASSERT_EQ(net.edges.size(), 1u);
  EXPECT_EQ(net.edges[0].a, 0);
  EXPECT_EQ(net.edges[0].b, 1);
  EXPECT_EQ(net.edges[0].weight, 6);
}

TEST(Network, FarApartCharactersHaveNoEdges) {
  const auto net = build_interaction_network({record(5, {0, 1, 2}), record(2, {1000, 1001})});
  ASSERT_EQ(net.nodes.size(), 2u);
  EXPECT_EQ(net.nodes[0].character, 2);
  EXPECT_EQ(net.nodes[0].size, 2);
  EXPECT_TRUE(net.edges.empty());
}

TEST(Protagonist, RatioOfTopTwo) {
  const auto stats = protagonist_stats({record(0, {1, 2, 3, 4, 5, 6}), record(1, {7, 8}), record(2, {9})});
  EXPECT_EQ(stats.protagonist, 0);
  EXPECT_DOUBLE_EQ(*stats.top2_ratio, 3.0);
  EXPECT_FALSE(protagonist_stats({record(0, {1})}).top2_ratio);
  EXPECT_FALSE(protagonist_stats({}).protagonist);
}

TEST(Timeline, PositionsAreFractionsOfTheBook) {
  AnnotatedBook book = annotated(kStory);
  annotate_characters(book, lex());
  const auto timeline = build_occurrence_timeline(book, 2);
  ASSERT_EQ(timeline.series.size(), 2u);
  EXPECT_EQ(timeline.series[0].character, book.characters[0].id);
  EXPECT_EQ(timeline.series[0].positions.size(), 4u);
  for (const auto& s : timeline.series) {
    EXPECT_TRUE(std::is_sorted(s.positions.begin(), s.positions.end()));
    for (double p : s.positions) {
      EXPECT_GE(p, 0.0);
      EXPECT_LT(p, 1.0);
    }
  }
  ASSERT_EQ(timeline.chapter_breaks.size(), 1u);
  EXPECT_GT(timeline.chapter_breaks[0], 0.3);
  EXPECT_LT(timeline.chapter_breaks[0], 0.7);
}

}  // namespace
}  // namespace novelscope
