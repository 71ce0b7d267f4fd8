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

// Book vectors: distributed bag-of-words paragraph vectors trained with
// negative sampling.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

struct EmbeddingOptions {
  int dim = 100;
  int window = 5;
  int epochs = 10;
  std::size_t vocab_max = 200000;
  std::int64_t min_count = 100;
  int negative = 5;
  double learning_rate = 0.025;  // decays linearly towards zero
  // Also train word vectors with skip-gram on the same windows; this shares
  // output weights with the book vectors and sharpens them.
  bool train_words = true;
  std::uint64_t seed = 42;
};

struct EmbeddingDocument {
  std::string id;
  std::string corpus;
  std::vector<std::string> words;
};

// Lowercase lemmas of word tokens, stop words removed.
std::vector<std::string> embedding_stream(const AnnotatedBook& book, const Lexicons& lexicons);

struct BookVectors {
  int dim = 0;
  std::vector<std::string> ids;      // sorted
  std::vector<std::string> corpora;  // parallel to ids; empty strings if unknown
  std::vector<float> values;         // ids.size() * dim, unit rows

  std::span<const float> vector(std::size_t row) const;
  // Throws Error(kUnknownId).
  std::size_t row_of(std::string_view id) const;
};

// Deterministic for a given seed; independent of document order. Throws
// Error(kEmptyInput) when no word survives the vocabulary filters.
BookVectors train_embeddings(std::vector<EmbeddingDocument> documents, const EmbeddingOptions& options = {});

double cosine(std::span<const float> a, std::span<const float> b);

struct Neighbor {
  std::string id;
  std::string corpus;
  double similarity = 0;
};

// Highest cosine first, the query excluded, ties by id. With per_corpus the
// top k of each corpus label are returned, grouped by label.
std::vector<Neighbor> most_similar(const BookVectors& vectors, std::string_view id, std::size_t k = 10,
                                   bool per_corpus = false);

// "NSV1", u32 count, u32 dim, then per book: u32 id length, id bytes, dim
// float32 values. All integers and floats little-endian.
std::string serialize_vectors(const BookVectors& vectors);
BookVectors parse_vectors(std::string_view bytes);

}  // namespace novelscope
