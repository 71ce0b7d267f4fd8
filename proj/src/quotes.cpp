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

#include "novelscope/quotes.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "novelscope/lexicon.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

enum class Mark { kNone, kOpen, kClose, kEither };

struct MarkSet {
  std::string_view open;
  std::string_view close;
  std::string_view either;
};

constexpr MarkSet kDouble{"“", "”", "\""};
constexpr MarkSet kSingle{"‘", "’", "'"};

Mark classify(std::string_view t, const MarkSet& marks) {
  if (t == marks.open) return Mark::kOpen;
  if (t == marks.close) return Mark::kClose;
  if (t == marks.either) return Mark::kEither;
  return Mark::kNone;
}

struct FlatToken {
  Token* token;
  std::size_t paragraph;
  std::size_t sentence;  // global sentence number
};

std::vector<FlatToken> flatten(AnnotatedBook& book) {
  std::vector<FlatToken> out;
  std::size_t paragraph = 0;
  std::size_t sentence = 0;
  for (auto& section : book.body) {
    for (auto& p : section.paragraphs) {
      for (auto& s : p.sentences) {
        for (auto& t : s.tokens) out.push_back({&t, paragraph, sentence});
        ++sentence;
      }
      ++paragraph;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_quotes(AnnotatedBook& book) {
  std::vector<std::string> warnings;
  auto flat = flatten(book);
  for (auto& f : flat) f.token->quote.reset();
  book.quotes.clear();

  const bool any_double = std::any_of(flat.begin(), flat.end(), [](const FlatToken& f) {
    return classify(f.token->text, kDouble) != Mark::kNone;
  });
  const MarkSet& marks = any_double ? kDouble : kSingle;

  auto emit = [&](std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(book.quotes.size());
    book.quotes.push_back({id, flat[begin].token->index, flat[end].token->index, std::nullopt, std::nullopt});
    for (std::size_t k = begin; k <= end; ++k) flat[k].token->quote = id;
  };

  constexpr std::size_t kClosed = std::numeric_limits<std::size_t>::max();
  std::size_t open = kClosed;  // position of the pending opening mark
  for (std::size_t k = 0; k < flat.size(); ++k) {
    const bool first_in_paragraph = k == 0 || flat[k - 1].paragraph != flat[k].paragraph;
    const Mark mark = classify(flat[k].token->text, marks);
    const bool opening = mark == Mark::kOpen || (mark == Mark::kEither && (open == kClosed || first_in_paragraph));
    if (first_in_paragraph && open != kClosed && !opening) {
      // The pending quote ended with the previous paragraph.
      warnings.push_back(fmt::format("unclosed quotation at token {} closed at paragraph end",
                                     flat[open].token->index));
      emit(open, k - 1);
      open = kClosed;
    }
    if (opening) {
      // Continuation paragraphs reopen a pending quote; a stray opener inside
      // an open quote is part of it.
      if (open == kClosed) open = k;
      continue;
    }
    if ((mark == Mark::kClose || mark == Mark::kEither) && open != kClosed) {
      emit(open, k);
      open = kClosed;
    }
  }
  if (open != kClosed) {
    warnings.push_back(fmt::format("unclosed quotation at token {} closed at paragraph end",
                                   flat[open].token->index));
    emit(open, flat.size() - 1);
  }
  return warnings;
}

void attribute_quotes(AnnotatedBook& book, const Lexicons& lex) {
  auto flat = flatten(book);
  if (flat.empty()) return;
  std::vector<std::int64_t> indices;
  indices.reserve(flat.size());
  for (const auto& f : flat) indices.push_back(f.token->index);
  // Position of a token index in document order, or flat.size() if absent.
  auto position = [&](std::int64_t index) {
    auto it = std::lower_bound(indices.begin(), indices.end(), index);
    return it != indices.end() && *it == index ? static_cast<std::size_t>(it - indices.begin()) : flat.size();
  };
  auto at = [&](std::int64_t index) -> const FlatToken& { return flat[position(index)]; };

  // Mention starts outside quotes: token index -> character id.
  std::map<std::int64_t, int> mention_start;
  for (const auto& c : book.characters) {
    for (auto m : c.mentions) {
      if (position(m) < flat.size() && !at(m).token->quote) mention_start.emplace(m, c.id);
    }
  }
  auto mention_end = [&](std::int64_t start) {
    std::size_t k = position(start);
    const auto id = flat[k].token->character;
    while (k + 1 < flat.size() && flat[k + 1].token->character == id &&
           !mention_start.contains(flat[k + 1].token->index)) {
      ++k;
    }
    return flat[k].token->index;
  };
  auto is_speech_verb = [&](const Token& t) {
    if (t.quote) return false;
    if (lex.speech_verbs.contains(text::fold_case(t.text))) return true;
    return t.lemma && lex.speech_verbs.contains(*t.lemma);
  };

  for (auto& q : book.quotes) {
    const std::size_t first_sentence = at(q.start).sentence;
    const std::size_t last_sentence = at(q.end).sentence;
    const std::size_t lo_sentence = first_sentence == 0 ? 0 : first_sentence - 1;
    const std::size_t hi_sentence = last_sentence + 1;

    struct Candidate {
      int character;
      std::int64_t distance;
      std::int64_t start;
      bool verb;
      bool inside = false;  // in one of the quote's own sentences
    };
    std::vector<Candidate> candidates;
    // Scan outward from the quote; candidates live in a bounded sentence window.
    auto lower = mention_start.lower_bound(q.start);
    for (auto it = lower; it != mention_start.begin();) {
      --it;
      if (at(it->first).sentence < lo_sentence) break;
      candidates.push_back({it->second, q.start - mention_end(it->first), it->first, false});
    }
    for (auto it = mention_start.upper_bound(q.end); it != mention_start.end(); ++it) {
      if (at(it->first).sentence > hi_sentence) break;
      candidates.push_back({it->second, it->first - q.end, it->first, false});
    }
    for (auto& c : candidates) {
      const std::size_t first = position(c.start);
      const std::size_t last = position(mention_end(c.start));
      const std::size_t lo = first >= 2 ? first - 2 : 0;
      const std::size_t hi = std::min(last + 2, flat.size() - 1);
      c.inside = flat[first].sentence >= first_sentence && flat[first].sentence <= last_sentence;
      for (std::size_t k = lo; k <= hi; ++k) {
        if (k >= first && k <= last) continue;
        if (is_speech_verb(*flat[k].token)) c.verb = true;
      }
    }
    auto better = [](const Candidate& a, const Candidate& b) {
      if (a.verb != b.verb) return a.verb;
      if (a.inside != b.inside) return a.inside;
      if (a.distance != b.distance) return a.distance < b.distance;
      return a.start < b.start;
    };
    std::sort(candidates.begin(), candidates.end(), better);
    q.speaker.reset();
    q.addressee.reset();
    if (candidates.empty()) continue;
    q.speaker = candidates.front().character;
    std::optional<Candidate> addressee;
    for (const auto& c : candidates) {
      if (c.character == *q.speaker) continue;
      if (!addressee || c.distance < addressee->distance ||
          (c.distance == addressee->distance && c.start < addressee->start)) {
        addressee = c;
      }
    }
    if (addressee) q.addressee = addressee->character;
  }
}

}  // namespace novelscope
