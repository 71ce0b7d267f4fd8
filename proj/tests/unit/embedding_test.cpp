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

#include "novelscope/embedding.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/linguistic.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

std::vector<EmbeddingDocument> corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<EmbeddingDocument> docs;
  for (int d = 0; d < 6; ++d) {
    EmbeddingDocument doc{"d" + std::to_string(d), d < 3 ? "gutenberg" : "hathitrust", {}};
    for (int i = 0; i < 200; ++i) doc.words.push_back("w" + std::to_string(d * 10 + static_cast<int>(rng() % 15)));
    docs.push_back(std::move(doc));
  }
  return docs;
}

EmbeddingOptions small_options() {
  EmbeddingOptions o;
  o.dim = 16;
  o.epochs = 5;
  o.min_count = 1;
  return o;
}

TEST(Embedding, DeterministicAndOrderIndependent) {
  auto docs = corpus(1);
  const auto a = train_embeddings(docs, small_options());
  std::reverse(docs.begin(), docs.end());
  const auto b = train_embeddings(docs, small_options());
  EXPECT_EQ(a.ids, b.ids);
  EXPECT_EQ(a.values, b.values);
  auto other = small_options();
  other.seed = 7;
  EXPECT_NE(train_embeddings(docs, other).values, a.values);
}

TEST(Embedding, RowsAreUnitLengthAndSorted) {
  const auto v = train_embeddings(corpus(2), small_options());
  EXPECT_TRUE(std::is_sorted(v.ids.begin(), v.ids.end()));
  ASSERT_EQ(v.values.size(), v.ids.size() * 16);
  for (std::size_t r = 0; r < v.ids.size(); ++r) {
    double norm = 0;
    for (float x : v.vector(r)) norm += static_cast<double>(x) * x;
    EXPECT_NEAR(norm, 1.0, 1e-5);
  }
  EXPECT_EQ(v.corpora[v.row_of("d4")], "hathitrust");
  EXPECT_THROW(v.row_of("missing"), Error);
}

TEST(Embedding, VocabularyFilterCanEmptyTheModel) {
  auto o = small_options();
  o.min_count = 1000000;
  try {
    train_embeddings(corpus(3), o);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  o = small_options();
  o.dim = 0;
  EXPECT_THROW(train_embeddings(corpus(3), o), Error);
}

TEST(Embedding, CosineBasics) {
  const std::vector<float> a = {1, 0, 0};
  const std::vector<float> b = {0, 2, 0};
  const std::vector<float> c = {-3, 0, 0};
  const std::vector<float> zero = {0, 0, 0};
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine(a, c), -1.0);
  EXPECT_DOUBLE_EQ(cosine(a, zero), 0.0);
  EXPECT_THROW(cosine(a, std::vector<float>{1, 0}), Error);
}

BookVectors handmade() {
  BookVectors v;
  v.dim = 2;
  v.ids = {"a", "b", "c", "d"};
  v.corpora = {"g", "g", "h", "h"};
  v.values = {1, 0, 0.8f, 0.6f, 0.6f, 0.8f, 0, 1};
  return v;
}

TEST(Neighbors, RankedByCosineExcludingTheQuery) {
  const auto n = most_similar(handmade(), "a", 2);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0].id, "b");
  EXPECT_EQ(n[1].id, "c");
  EXPECT_NEAR(n[0].similarity, 0.8, 1e-6);
}

TEST(Neighbors, PerCorpusGroupsByLabel) {
  const auto n = most_similar(handmade(), "b", 1, true);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0].id, "a");
  EXPECT_EQ(n[0].corpus, "g");
  EXPECT_EQ(n[1].id, "c");
  EXPECT_EQ(n[1].corpus, "h");
}

TEST(VectorFile, RoundTripAndCorruption) {
  const auto v = handmade();
  const std::string bytes = serialize_vectors(v);
  EXPECT_TRUE(bytes.starts_with("NSV1"));
  const auto back = parse_vectors(bytes);
  EXPECT_EQ(back.ids, v.ids);
  EXPECT_EQ(back.values, v.values);
  EXPECT_EQ(back.dim, 2);

  auto expect_parse_error = [](std::string_view b) {
    try {
      parse_vectors(b);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  };
  expect_parse_error("XXXX");
  expect_parse_error(std::string_view(bytes).substr(0, bytes.size() - 1));
  expect_parse_error(bytes + "x");
  auto unsorted = v;
  std::swap(unsorted.ids[0], unsorted.ids[1]);
  expect_parse_error(serialize_vectors(unsorted));
}

TEST(Stream, LemmasWithoutStopWords) {
  const auto& lex = Lexicons::bundled();
  AnnotatedBook book = testing::raw_book("t", "The whales were swimming in the sea, and 7 ships sailed.");
  annotate_text(book, lex);
  const auto words = embedding_stream(book, lex);
  EXPECT_NE(std::find(words.begin(), words.end(), "whale"), words.end());
  EXPECT_EQ(std::find(words.begin(), words.end(), "the"), words.end());
  EXPECT_EQ(std::find(words.begin(), words.end(), ","), words.end());
  EXPECT_EQ(std::find(words.begin(), words.end(), "7"), words.end());
}

}  // namespace
}  // namespace novelscope
