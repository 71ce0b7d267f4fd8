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

// Per-book statistics: readability, representative vocabulary, POS shares.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

// Metric keys in report order.
inline constexpr std::array<std::string_view, 8> kReadabilityMetrics = {
    "flesch_reading_ease", "dale_chall", "ari",   "coleman_liau",
    "gunning_fog",         "smog",       "spache", "linsear_write"};

// Raw counts behind the formulas.
struct ReadabilityCounts {
  std::int64_t words = 0;       // tokens with a letter or digit, "'s" excluded
  std::int64_t sentences = 0;   // sentences holding at least one word
  std::int64_t syllables = 0;
  std::int64_t characters = 0;  // letters and digits
  std::int64_t complex_words = 0;  // >= 3 syllables, not capitalized mid-sentence
  std::int64_t polysyllables = 0;  // >= 3 syllables
  std::int64_t dale_chall_unfamiliar = 0;
  std::int64_t spache_unfamiliar = 0;
  std::vector<double> linsear_windows;  // Linsear Write score of each 100-word window
};

// Absent values mark metrics that are undefined for the input.
using ReadabilityScores = std::map<std::string, std::optional<double>, std::less<>>;

ReadabilityCounts readability_counts(const std::vector<Sentence>& sentences, const Lexicons& lexicons);
ReadabilityScores readability_scores(const ReadabilityCounts& counts);

ReadabilityScores readability_suite(const AnnotatedBook& book, const Lexicons& lexicons);
// Tokenizes and tags `text` as one paragraph block first.
ReadabilityScores readability_of_text(std::string_view text, const Lexicons& lexicons);

// Lemma frequencies over word tokens.
struct LemmaCounts {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;

  void add(const LemmaCounts& other);
};

LemmaCounts lemma_counts(const AnnotatedBook& book);
// The lemma if present, else the case-folded text.
std::string lemma_key(const Token& token);

struct VocabularyScore {
  std::string word;
  double ratio = 0;
  std::int64_t count = 0;  // occurrences in the book
  bool operator==(const VocabularyScore&) const = default;
};

struct RepresentativeVocabulary {
  std::vector<VocabularyScore> most;   // highest ratio first
  std::vector<VocabularyScore> least;  // lowest ratio first, present words only
  std::vector<std::string> missing;    // common corpus words absent from the book
};

// Ratio of normalized book frequency to normalized corpus frequency over the
// corpus's `top_common` most frequent words. Throws Error(kEmptyInput) when
// either model is empty.
RepresentativeVocabulary representative_vocabulary(const LemmaCounts& book, const LemmaCounts& corpus,
                                                   std::size_t top_common = 10000,
                                                   std::size_t list_len = 25);

struct PosShare {
  PosTag tag = PosTag::kNoun;
  std::int64_t count = 0;
  double percent = 0;  // of the eight analyzed categories
};

// One entry per analyzed category, in kAnalyzedPos order. Throws
// Error(kUndefined) when no token carries one of the eight tags.
std::vector<PosShare> pos_distribution(const AnnotatedBook& book);

struct GenderShares {
  int male = 0;
  int female = 0;
  int unknown = 0;
  std::optional<double> male_percent;  // among characters of known gender
  std::optional<double> female_percent;
};

GenderShares character_gender_shares(const std::vector<CharacterRecord>& characters);

}  // namespace novelscope
