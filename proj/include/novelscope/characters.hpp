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

// Character identification, pronoun counts, timelines and co-occurrence
// networks.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

struct CharacterOptions {
  int min_mentions = 3;    // characters with fewer mentions are dropped
  int pronoun_window = 2;  // sentences searched back for a pronoun antecedent
};

struct MentionCandidate {
  std::int64_t start = 0;  // first token index, the honorific if any
  std::int64_t end = 0;    // last token index, inclusive
  std::string surface;     // token texts joined by single spaces
  std::optional<std::string> honorific;
  std::optional<std::string> first_name;  // set for names of two or more words
  std::optional<std::string> last_name;
  std::optional<Gender> honorific_vote;
  std::optional<Gender> pronoun_vote;
  std::optional<Gender> name_vote;

  // The name without its honorific.
  std::string name() const;
  bool is_full_name() const { return first_name.has_value(); }
  bool operator==(const MentionCandidate&) const = default;
};

// Person-tagged token runs when the book has any; otherwise runs of
// capitalized words that are not sentence-initial, plus sentence-initial
// words also seen capitalized mid-sentence, plus any capitalized word right
// after a prefix honorific.
std::vector<MentionCandidate> detect_person_mentions(const AnnotatedBook& book,
                                                     const Lexicons& lexicons);

// Extends each candidate left over an immediately preceding honorific.
void augment_honorifics(std::vector<MentionCandidate>& candidates, const AnnotatedBook& book,
                        const Lexicons& lexicons);

// Fills the honorific, pronoun and name-list votes. Pronoun votes are cast
// per name: each gendered pronoun counts for the nearest preceding candidate
// within `pronoun_window` sentences.
void infer_gender_votes(std::vector<MentionCandidate>& candidates, const AnnotatedBook& book,
                        const Lexicons& lexicons, const CharacterOptions& options = {});

// First available vote in the order honorific, pronoun, name list.
Gender resolve_gender(const MentionCandidate& candidate);

// Groups candidates into characters ranked by mention count (ties: earlier
// first mention), dropping those under options.min_mentions.
std::vector<CharacterRecord> cluster_mentions(const std::vector<MentionCandidate>& candidates,
                                              const CharacterOptions& options = {});

// Recomputes gcc, fpcc and spcc from the tokens, quotes and characters.
void attach_pronoun_counts(AnnotatedBook& book, const CharacterOptions& options = {});

// Full character phase: detection, clustering, token labels, quotes and
// their attribution, pronoun counts. Returns warnings.
std::vector<std::string> annotate_characters(AnnotatedBook& book, const Lexicons& lexicons,
                                             const CharacterOptions& options = {});

struct TimelineSeries {
  int character = 0;
  std::string name;
  std::vector<double> positions;  // mention index / token count
};

struct Timeline {
  std::vector<TimelineSeries> series;  // most frequent first
  std::vector<double> chapter_breaks;  // first token of each later section
};

Timeline build_occurrence_timeline(const AnnotatedBook& book, std::size_t top_k = 10);

// Unordered pairs (x in a, y in b) with |x - y| <= window. Inputs sorted.
std::int64_t count_cooccurrences(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                 std::int64_t window);

struct NetworkNode {
  int character = 0;
  std::string name;
  Gender gender = Gender::kUnknown;
  int size = 0;  // mention count
  bool operator==(const NetworkNode&) const = default;
};

struct NetworkEdge {
  int a = 0;  // a < b
  int b = 0;
  std::int64_t weight = 0;
  bool operator==(const NetworkEdge&) const = default;
};

struct InteractionNetwork {
  std::vector<NetworkNode> nodes;  // ordered by character id
  std::vector<NetworkEdge> edges;  // ordered by (a, b)
};

// An edge needs strictly more than `min_co` co-occurrences.
InteractionNetwork build_interaction_network(const std::vector<CharacterRecord>& characters,
                                             std::int64_t window = 30, std::int64_t min_co = 5);

struct ProtagonistStats {
  std::optional<int> protagonist;   // character id
  std::optional<double> top2_ratio;  // count of first / count of second
};

ProtagonistStats protagonist_stats(const std::vector<CharacterRecord>& characters);

}  // namespace novelscope
