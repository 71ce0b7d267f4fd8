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

// In-memory model of an annotated book and traversal helpers over it.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

namespace novelscope {

enum class PosTag {
  kNoun,
  kAdj,
  kVerb,
  kAdv,
  kPron,
  kIntj,
  kAdp,
  kConj,
  kDet,
  kNum,
  kPunct,
  kOther,
};

// The eight categories reported by the POS statistics, in report order.
inline constexpr std::array<PosTag, 8> kAnalyzedPos = {
    PosTag::kNoun, PosTag::kAdj,  PosTag::kVerb, PosTag::kAdv,
    PosTag::kPron, PosTag::kIntj, PosTag::kAdp,  PosTag::kConj};

enum class NerTag { kPerson, kOther };
enum class Gender { kUnknown, kMale, kFemale };
enum class HeaderKind { kChapter, kBook, kPart, kVolume, kOther };
enum class BlockKind { kGutenbergHeader, kGutenbergFooter, kFrontMatter, kBackMatter };

// Completed processing phases, recorded in document order.
enum class Phase { kIngest, kSegment, kLinguistic, kCharacters, kAnalytics };

std::string_view pos_name(PosTag tag);
std::optional<PosTag> parse_pos(std::string_view name);
std::string_view ner_name(NerTag tag);
std::optional<NerTag> parse_ner(std::string_view name);
std::string_view gender_name(Gender gender);
std::optional<Gender> parse_gender(std::string_view name);
std::string_view header_kind_name(HeaderKind kind);
std::optional<HeaderKind> parse_header_kind(std::string_view name);
std::string_view block_kind_name(BlockKind kind);
std::optional<BlockKind> parse_block_kind(std::string_view name);
std::string_view phase_name(Phase phase);
std::optional<Phase> parse_phase(std::string_view name);

struct Token {
  std::string text;
  std::int64_t index = 0;   // global position in the body, strictly increasing
  std::int64_t offset = 0;  // byte offset into the cleaned body text
  std::string ws;           // text between this token and the next item
  std::optional<PosTag> pos;
  std::optional<std::string> lemma;
  std::optional<NerTag> ner;
  std::optional<int> character;
  std::optional<int> quote;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  bool operator==(const Sentence&) const = default;
};

struct Paragraph {
  std::vector<Sentence> sentences;
  bool operator==(const Paragraph&) const = default;
};

struct Header {
  HeaderKind kind = HeaderKind::kOther;
  std::optional<int> number;  // >= 1 when present
  std::string raw;            // the heading line exactly as in the body
  std::string ws;             // text after the heading up to the next item
  bool operator==(const Header&) const = default;
};

struct Section {
  std::optional<Header> header;
  std::vector<Paragraph> paragraphs;
  bool operator==(const Section&) const = default;
};

struct CharacterRecord {
  int id = 0;
  std::string canonical_name;
  Gender gender = Gender::kUnknown;
  std::map<std::string, int> aliases;       // surface form -> mentions
  std::vector<std::int64_t> mentions;       // first token index of each mention
  int gcc = 0;   // gendered third-person pronouns
  int fpcc = 0;  // first-person pronouns in own quotes
  int spcc = 0;  // second-person pronouns in quotes addressed to it

  int count() const { return static_cast<int>(mentions.size()); }
  bool operator==(const CharacterRecord&) const = default;
};

struct QuoteSpan {
  int id = 0;
  std::int64_t start = 0;  // first token index, the opening mark
  std::int64_t end = 0;    // last token index, inclusive
  std::optional<int> speaker;
  std::optional<int> addressee;
  bool operator==(const QuoteSpan&) const = default;
};

struct MatterBlock {
  BlockKind kind = BlockKind::kFrontMatter;
  std::string text;
  bool operator==(const MatterBlock&) const = default;
};

struct BookMeta {
  std::string source_id;
  std::string corpus;
  std::string title;
  std::string author;
  std::optional<int> year;
  std::vector<std::string> subjects;
  std::string encoding;
  std::string digest;         // hash of the source bytes
  std::string corpus_digest;  // hash of the corpus the analytics ran over
  std::vector<Phase> phases;

  bool has_phase(Phase phase) const;
  void add_phase(Phase phase);
  bool operator==(const BookMeta&) const = default;
};

struct AnnotatedBook {
  BookMeta meta;
  std::vector<CharacterRecord> characters;
  std::vector<QuoteSpan> quotes;
  std::vector<MatterBlock> front;
  std::string lead;                     // body text before the first item
  std::optional<std::string> raw_body;  // unsegmented body, before segmentation
  std::vector<Section> body;
  std::vector<MatterBlock> back;

  bool operator==(const AnnotatedBook&) const = default;
};

// Throws Error(kInvariant) describing the first violated rule.
void check_invariants(const AnnotatedBook& book);

// Reassembles the cleaned body from headers, tokens and recorded whitespace.
std::string body_text(const AnnotatedBook& book);
// Front blocks + body + back blocks: the full text the book was built from.
std::string full_text(const AnnotatedBook& book);

const CharacterRecord* find_character(const AnnotatedBook& book, int id);

// Document-order views. They borrow from the book, which must outlive them.
inline auto paragraphs(const AnnotatedBook& book) {
  return book.body | std::views::transform(&Section::paragraphs) | std::views::join;
}

inline auto sentences(const AnnotatedBook& book) {
  return paragraphs(book) | std::views::transform(&Paragraph::sentences) |
         std::views::join;
}

inline auto tokens(const AnnotatedBook& book) {
  return sentences(book) | std::views::transform(&Sentence::tokens) |
         std::views::join;
}

inline auto tokens_with_pos(const AnnotatedBook& book, PosTag tag) {
  return tokens(book) |
         std::views::filter([tag](const Token& t) { return t.pos == tag; });
}

// Throws Error(kUnknownId) when no character has the id.
std::vector<const Token*> mentions_of(const AnnotatedBook& book, int character_id);

// Flat copies of the token stream, for algorithms that need random access.
std::vector<const Token*> token_list(const AnnotatedBook& book);
std::size_t token_count(const AnnotatedBook& book);

}  // namespace novelscope
