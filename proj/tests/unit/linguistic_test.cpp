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

#include "novelscope/linguistic.hpp"

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

const Lexicons& lex() { return Lexicons::bundled(); }

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

TEST(Tokenize, KeepsAbbreviationsNumbersAndContractions) {
  const auto tokens = tokenize("Mr. Smith's dog, e.g. a 3.5-year-old, didn't bark.", lex());
  EXPECT_EQ(texts(tokens), (std::vector<std::string>{"Mr.", "Smith", "'s", "dog", ",", "e.g.", "a", "3.5-year-old",
                                                     ",", "didn't", "bark", "."}));
}

TEST(Tokenize, DetachesQuotesAndDashes) {
  const auto tokens = tokenize("\xe2\x80\x9cWait\xe2\x80\x94now!\xe2\x80\x9d (he said)", lex());
  EXPECT_EQ(texts(tokens), (std::vector<std::string>{"\xe2\x80\x9c", "Wait", "\xe2\x80\x94", "now", "!",
                                                     "\xe2\x80\x9d", "(", "he", "said", ")"}));
}

TEST(Tokenize, OffsetsAndWhitespaceReproduceTheText) {
  const std::string text = "  Leading space.\n\nA second  paragraph\tends here...  ";
  const auto tokens = tokenize(text, lex(), 100);
  ASSERT_FALSE(tokens.empty());
  std::string rebuilt = text.substr(0, static_cast<std::size_t>(tokens[0].offset - 100));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    EXPECT_EQ(tokens[i].index, static_cast<std::int64_t>(i));
    EXPECT_EQ(text.substr(static_cast<std::size_t>(tokens[i].offset - 100), tokens[i].text.size()), tokens[i].text);
    rebuilt += tokens[i].text + tokens[i].ws;
  }
  EXPECT_EQ(rebuilt, text);
}

TEST(Sentences, SplitsOnTerminatorsButNotAbbreviations) {
  auto paragraphs = split_sentences(tokenize("Mr. Brown left. She stayed! Did he? Yes...\n\nNew paragraph.", lex()));
  ASSERT_EQ(paragraphs.size(), 2u);
  ASSERT_EQ(paragraphs[0].sentences.size(), 4u);
  EXPECT_EQ(paragraphs[0].sentences[0].tokens.size(), 4u);
  EXPECT_EQ(paragraphs[1].sentences.size(), 1u);
}

TEST(Sentences, ClosingQuotesStayAndLowercaseContinues) {
  auto paragraphs = split_sentences(tokenize("\"Stop!\" he cried. \"Now.\" Then silence.", lex()));
  ASSERT_EQ(paragraphs.size(), 1u);
  const auto& s = paragraphs[0].sentences;
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].tokens.back().text, ".");
  EXPECT_EQ(s[1].tokens.back().text, "\"");
}

TEST(Sentences, Terminators) {
  EXPECT_TRUE(is_terminator("."));
  EXPECT_TRUE(is_terminator("?!"));
  EXPECT_TRUE(is_terminator("..."));
  EXPECT_TRUE(is_terminator("\xe2\x80\xa6"));
  EXPECT_FALSE(is_terminator(","));
  EXPECT_FALSE(is_terminator("a."));
}

TEST(Tagging, ClosedClassAndSuffixRules) {
  auto paragraphs = split_sentences(tokenize("Oh, she ran quickly and the 3 dogs hid in sadness.", lex()));
  Sentence s = paragraphs.at(0).sentences.at(0);
  pos_tag(s, lex());
  std::map<std::string, PosTag> tags;
  for (const auto& t : s.tokens) tags[t.text] = *t.pos;
  EXPECT_EQ(tags["Oh"], PosTag::kIntj);
  EXPECT_EQ(tags[","], PosTag::kPunct);
  EXPECT_EQ(tags["she"], PosTag::kPron);
  EXPECT_EQ(tags["quickly"], PosTag::kAdv);
  EXPECT_EQ(tags["and"], PosTag::kConj);
  EXPECT_EQ(tags["the"], PosTag::kDet);
  EXPECT_EQ(tags["3"], PosTag::kNum);
  EXPECT_EQ(tags["in"], PosTag::kAdp);
  EXPECT_EQ(tags["sadness"], PosTag::kNoun);
  for (const auto& t : s.tokens) EXPECT_EQ(t.lemma.has_value(), *t.pos != PosTag::kPunct) << t.text;
}

TEST(Lemmas, ExceptionsThenSuffixes) {
  EXPECT_EQ(lemmatize("went", PosTag::kVerb, lex()), "go");
  EXPECT_EQ(lemmatize("Mice", PosTag::kNoun, lex()), "mouse");
  EXPECT_EQ(lemmatize("cats", PosTag::kNoun, lex()), "cat");
  EXPECT_EQ(lemmatize("boxes", PosTag::kNoun, lex()), "box");
  EXPECT_EQ(lemmatize("running", PosTag::kVerb, lex()), "run");
  EXPECT_EQ(lemmatize("walked", PosTag::kVerb, lex()), "walk");
  EXPECT_EQ(lemmatize("Happier", PosTag::kAdj, lex()), "happier");
}

TEST(Syllables, VowelGroupsWithSilentE) {
  EXPECT_EQ(count_syllables("cat"), 1);
  EXPECT_EQ(count_syllables("make"), 1);
  EXPECT_EQ(count_syllables("the"), 1);
  EXPECT_EQ(count_syllables("table"), 2);
  EXPECT_EQ(count_syllables("guitar"), 2);
  EXPECT_EQ(count_syllables("coming"), 2);
  EXPECT_EQ(count_syllables("wonderful"), 3);
  EXPECT_EQ(count_syllables("Alexander,"), 4);
  EXPECT_EQ(count_syllables("--"), 0);
}

TEST(Annotate, KeepsTheBodyTextAndStampsPhases) {
  const std::string raw = "Opening words.\n\nCHAPTER I.\n\nIt was dark. \"Run!\" she said.\n\nCHAPTER II.\n\nThe end came.\n";
  AnnotatedBook book = testing::raw_book("t", raw);
  annotate_text(book, lex());
  EXPECT_FALSE(book.raw_body);
  EXPECT_EQ(body_text(book), raw);
  EXPECT_TRUE(book.meta.has_phase(Phase::kSegment));
  EXPECT_TRUE(book.meta.has_phase(Phase::kLinguistic));
  ASSERT_EQ(book.body.size(), 3u);
  EXPECT_FALSE(book.body[0].header);
  EXPECT_EQ(book.body[2].header->number, 2);
  EXPECT_NO_THROW(check_invariants(book));
  for (const Token* t : token_list(book)) EXPECT_EQ(raw.substr(static_cast<std::size_t>(t->offset), t->text.size()), t->text);
}

TEST(Annotate, LeadingBlankLinesLiveInTheLead) {
  AnnotatedBook book = testing::raw_book("t", "\n\nCHAPTER 1\n\nText.\n");
  annotate_text(book, lex());
  EXPECT_EQ(book.lead, "\n\n");
  EXPECT_EQ(body_text(book), "\n\nCHAPTER 1\n\nText.\n");
}

TEST(Annotate, NeedsARawBody) {
  AnnotatedBook book;
  try {
    annotate_text(book, lex());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingPhase);
  }
}

TEST(ExternalAnnotations, OverwriteAlignedTokens) {
  AnnotatedBook book = testing::raw_book("t", "Ann ran.");
  annotate_text(book, lex());
  import_external_annotations(book, "# comment\nAnn\tAnn\tPROPN\tB-PER\nran\trun\tVERB\tO\n.\t_\tPUNCT\tO\n");
  const auto tokens = token_list(book);
  EXPECT_EQ(tokens[0]->pos, PosTag::kNoun);
  EXPECT_EQ(tokens[0]->ner, NerTag::kPerson);
  EXPECT_EQ(tokens[1]->lemma, "run");
  EXPECT_FALSE(tokens[1]->ner);
}

TEST(ExternalAnnotations, ReportMisalignmentAndBadLines) {
  AnnotatedBook book = testing::raw_book("t", "Ann ran.");
  annotate_text(book, lex());
  const AnnotatedBook before = book;
  auto expect_code = [&](std::string_view conll, ErrorCode code) {
    try {
      import_external_annotations(book, conll);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
    EXPECT_EQ(book, before);
  };
  expect_code("Ann\tAnn\tPROPN\tO\nsat\tsit\tVERB\tO\n.\t.\tPUNCT\tO\n", ErrorCode::kAlignment);
  expect_code("Ann\tAnn\tPROPN\tO\n", ErrorCode::kAlignment);
  expect_code("Ann\tAnn\tPROPN\n", ErrorCode::kParse);
  expect_code("Ann\tAnn\tNAME\tO\nran\trun\tVERB\tO\n.\t.\tPUNCT\tO\n", ErrorCode::kParse);
}

}  // namespace
}  // namespace novelscope
