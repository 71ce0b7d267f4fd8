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

// Per-book and corpus artifacts: JSON documents with their own parsers and
// self-contained HTML pages with inline SVG.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/analytics_book.hpp"
#include "novelscope/analytics_corpus.hpp"
#include "novelscope/characters.hpp"
#include "novelscope/document.hpp"

namespace novelscope {

inline constexpr int kReportSchemaVersion = 1;

struct CharacterSummary {
  int id = 0;
  std::string name;
  Gender gender = Gender::kUnknown;
  std::int64_t count = 0;
  std::map<std::string, std::int64_t> aliases;
  std::int64_t gcc = 0;
  std::int64_t fpcc = 0;
  std::int64_t spcc = 0;
};

struct PosEntry {
  PosTag tag = PosTag::kNoun;
  std::int64_t count = 0;
  double percent = 0;
  std::optional<double> corpus_mean;  // mean percent over the corpus
  std::optional<double> percentile;   // of this book within the corpus
};

struct SimilarBook {
  std::string id;
  std::string title;
  std::string corpus;
  double similarity = 0;
};

struct BookReport {
  std::string id;
  std::string title;
  std::string author;
  std::string corpus;
  std::optional<int> year;
  std::vector<std::string> subjects;

  std::int64_t tokens = 0;
  std::int64_t sentences = 0;
  std::int64_t sections = 0;  // sections with a header
  std::int64_t quotes = 0;
  std::int64_t attributed_quotes = 0;

  std::vector<CharacterSummary> characters;  // by id
  std::optional<int> protagonist;
  std::optional<double> top2_ratio;
  Timeline timeline;
  InteractionNetwork network;
  GenderShares gender;
  std::optional<double> male_percent_percentile;
  ReadabilityScores readability;
  std::vector<PosEntry> pos;  // empty when the book has no analyzed tags
  RepresentativeVocabulary vocabulary;
  std::vector<SimilarBook> similar;
  std::string corpus_digest;
};

// One row of the corpus book list.
struct CorpusBook {
  std::string id;
  std::string title;
  std::string author;
  std::string corpus;
  std::optional<int> year;
  std::vector<std::string> subjects;
  std::int64_t characters = 0;
  std::optional<std::string> protagonist;
  Gender protagonist_gender = Gender::kUnknown;
  std::optional<double> top2_ratio;
};

struct CorpusReport {
  std::vector<CorpusBook> books;  // by id
  std::size_t ranks = 9;
  std::optional<RankShare> rank_share;  // absent when no book has enough characters
  ReferenceDistributions reference;
  double outlier_threshold = 10;
  RatioDistribution top2;
  std::vector<GenderBin> gender_over_time;  // empty with fewer than ten dated books
  std::vector<std::vector<std::optional<double>>> pos_correlation;  // empty below three books
  std::map<std::string, double> pos_mean;  // keyed by tag name
  std::vector<std::string> notes;          // why a section is absent
  std::string corpus_digest;
};

// Throws Error(kParse) on malformed JSON or missing fields.
std::string book_json(const BookReport& report);
BookReport parse_book_json(std::string_view json);
std::string corpus_json(const CorpusReport& report);
CorpusReport parse_corpus_json(std::string_view json);

std::string book_html(const BookReport& report);
std::string corpus_html(const CorpusReport& report);
std::string authors_html(const CorpusReport& report);
std::string subjects_html(const CorpusReport& report);

// Both return the number of files whose contents changed. Throws Error(kIo)
// when the directory cannot be written.
std::size_t emit_book_report(const BookReport& report, const std::filesystem::path& dir);
std::size_t emit_corpus_report(const CorpusReport& report, const std::filesystem::path& dir);

}  // namespace novelscope
