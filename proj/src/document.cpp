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

#include "novelscope/document.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "novelscope/error.hpp"

namespace novelscope {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view name) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "?";
}

constexpr std::array<std::pair<PosTag, std::string_view>, 12> kPosNames = {{
    {PosTag::kNoun, "NOUN"}, {PosTag::kAdj, "ADJ"},   {PosTag::kVerb, "VERB"},
    {PosTag::kAdv, "ADV"},   {PosTag::kPron, "PRON"}, {PosTag::kIntj, "INTJ"},
    {PosTag::kAdp, "ADP"},   {PosTag::kConj, "CONJ"}, {PosTag::kDet, "DET"},
    {PosTag::kNum, "NUM"},   {PosTag::kPunct, "PUNCT"}, {PosTag::kOther, "OTHER"},
}};

constexpr std::array<std::pair<NerTag, std::string_view>, 2> kNerNames = {{
    {NerTag::kPerson, "PERSON"}, {NerTag::kOther, "OTHER"},
}};

constexpr std::array<std::pair<Gender, std::string_view>, 3> kGenderNames = {{
    {Gender::kUnknown, "unknown"}, {Gender::kMale, "male"}, {Gender::kFemale, "female"},
}};

constexpr std::array<std::pair<HeaderKind, std::string_view>, 5> kHeaderNames = {{
    {HeaderKind::kChapter, "chapter"}, {HeaderKind::kBook, "book"},
    {HeaderKind::kPart, "part"},       {HeaderKind::kVolume, "volume"},
    {HeaderKind::kOther, "other"},
}};

constexpr std::array<std::pair<BlockKind, std::string_view>, 4> kBlockNames = {{
    {BlockKind::kGutenbergHeader, "gutenberg_header"},
    {BlockKind::kGutenbergFooter, "gutenberg_footer"},
    {BlockKind::kFrontMatter, "front_matter"},
    {BlockKind::kBackMatter, "back_matter"},
}};

constexpr std::array<std::pair<Phase, std::string_view>, 5> kPhaseNames = {{
    {Phase::kIngest, "ingest"},         {Phase::kSegment, "segment"},
    {Phase::kLinguistic, "linguistic"}, {Phase::kCharacters, "characters"},
    {Phase::kAnalytics, "analytics"},
}};

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorCode::kInvariant, what);
}

}  // namespace

std::string_view pos_name(PosTag tag) { return name_of(kPosNames, tag); }
std::optional<PosTag> parse_pos(std::string_view name) { return lookup(kPosNames, name); }
std::string_view ner_name(NerTag tag) { return name_of(kNerNames, tag); }
std::optional<NerTag> parse_ner(std::string_view name) { return lookup(kNerNames, name); }
std::string_view gender_name(Gender gender) { return name_of(kGenderNames, gender); }
std::optional<Gender> parse_gender(std::string_view name) {
  return lookup(kGenderNames, name);
}
std::string_view header_kind_name(HeaderKind kind) { return name_of(kHeaderNames, kind); }
std::optional<HeaderKind> parse_header_kind(std::string_view name) {
  return lookup(kHeaderNames, name);
}
std::string_view block_kind_name(BlockKind kind) { return name_of(kBlockNames, kind); }
std::optional<BlockKind> parse_block_kind(std::string_view name) {
  return lookup(kBlockNames, name);
}
std::string_view phase_name(Phase phase) { return name_of(kPhaseNames, phase); }
std::optional<Phase> parse_phase(std::string_view name) { return lookup(kPhaseNames, name); }

bool BookMeta::has_phase(Phase phase) const {
  return std::find(phases.begin(), phases.end(), phase) != phases.end();
}

void BookMeta::add_phase(Phase phase) {
  if (!has_phase(phase)) {
    phases.push_back(phase);
    std::sort(phases.begin(), phases.end());
  }
}

void check_invariants(const AnnotatedBook& book) {
  std::set<int> ids;
  for (const auto& c : book.characters) {
    if (!ids.insert(c.id).second) violated(fmt::format("duplicate character id {}", c.id));
    if (c.canonical_name.empty() || !c.aliases.contains(c.canonical_name)) {
      violated(fmt::format("character {}: canonical name is not an alias", c.id));
    }
    if (!std::is_sorted(c.mentions.begin(), c.mentions.end())) {
      violated(fmt::format("character {}: mentions not sorted", c.id));
    }
    int alias_total = 0;
    for (const auto& [name, n] : c.aliases) {
      if (n < 0) violated(fmt::format("character {}: negative alias count", c.id));
      alias_total += n;
    }
    if (alias_total != c.count()) {
      violated(fmt::format("character {}: alias counts sum to {} but {} mentions",
                           c.id, alias_total, c.count()));
    }
    if (c.gcc < 0 || c.fpcc < 0 || c.spcc < 0) {
      violated(fmt::format("character {}: negative coreference count", c.id));
    }
  }

  std::set<int> quote_ids;
  for (const auto& q : book.quotes) {
    if (!quote_ids.insert(q.id).second) violated(fmt::format("duplicate quote id {}", q.id));
    if (q.end < q.start) violated(fmt::format("quote {}: end precedes start", q.id));
    for (const auto& who : {q.speaker, q.addressee}) {
      if (who && !ids.contains(*who)) {
        violated(fmt::format("quote {}: unknown character {}", q.id, *who));
      }
    }
  }

  if (book.raw_body && !book.body.empty()) {
    violated("book has both a raw body and segmented sections");
  }

  std::optional<std::int64_t> previous;
  for (const auto& section : book.body) {
    if (section.header && section.header->number && *section.header->number < 1) {
      violated(fmt::format("header '{}' has number < 1", section.header->raw));
    }
    for (const auto& paragraph : section.paragraphs) {
      for (const auto& sentence : paragraph.sentences) {
        if (sentence.tokens.empty()) violated("empty sentence");
        for (const auto& token : sentence.tokens) {
          if (token.text.empty()) violated(fmt::format("token {} is empty", token.index));
          if (previous && token.index <= *previous) {
            violated(fmt::format("token index {} does not follow {}", token.index, *previous));
          }
          previous = token.index;
          if (token.character && !ids.contains(*token.character)) {
            violated(fmt::format("token {} references unknown character {}", token.index,
                                 *token.character));
          }
          if (token.quote && !quote_ids.contains(*token.quote)) {
            violated(fmt::format("token {} references unknown quote {}", token.index,
                                 *token.quote));
          }
        }
      }
    }
  }
}

std::string body_text(const AnnotatedBook& book) {
  std::string out = book.lead;
  if (book.raw_body) out += *book.raw_body;
  for (const auto& section : book.body) {
    if (section.header) {
      out += section.header->raw;
      out += section.header->ws;
    }
    for (const auto& paragraph : section.paragraphs) {
      for (const auto& sentence : paragraph.sentences) {
        for (const auto& token : sentence.tokens) {
          out += token.text;
          out += token.ws;
        }
      }
    }
  }
  return out;
}

std::string full_text(const AnnotatedBook& book) {
  std::string out;
  for (const auto& block : book.front) out += block.text;
  out += body_text(book);
  for (const auto& block : book.back) out += block.text;
  return out;
}

const CharacterRecord* find_character(const AnnotatedBook& book, int id) {
  for (const auto& c : book.characters) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<const Token*> mentions_of(const AnnotatedBook& book, int character_id) {
  if (find_character(book, character_id) == nullptr) {
    throw Error(ErrorCode::kUnknownId, fmt::format("unknown character id {}", character_id));
  }
  std::vector<const Token*> out;
  for (const Token& t : tokens(book)) {
    if (t.character == character_id) out.push_back(&t);
  }
  return out;
}

std::vector<const Token*> token_list(const AnnotatedBook& book) {
  std::vector<const Token*> out;
  for (const Token& t : tokens(book)) out.push_back(&t);
  return out;
}

std::size_t token_count(const AnnotatedBook& book) {
  std::size_t n = 0;
  for (const auto& sentence : sentences(book)) n += sentence.tokens.size();
  return n;
}

}  // namespace novelscope
