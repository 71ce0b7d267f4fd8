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

#include "novelscope/analytics_book.hpp"

#include <algorithm>

#include "novelscope/error.hpp"
#include "novelscope/text.hpp"

namespace novelscope {

void LemmaCounts::add(const LemmaCounts& other) {
  for (const auto& [word, n] : other.counts) counts[word] += n;
  total += other.total;
}

std::string lemma_key(const Token& token) { return token.lemma ? *token.lemma : text::fold_case(token.text); }

LemmaCounts lemma_counts(const AnnotatedBook& book) {
  LemmaCounts out;
  for (const auto& t : tokens(book)) {
    if (!text::has_letter(t.text) || t.pos == PosTag::kOther) continue;
    ++out.counts[lemma_key(t)];
    ++out.total;
  }
  return out;
}

RepresentativeVocabulary representative_vocabulary(const LemmaCounts& book, const LemmaCounts& corpus,
                                                   std::size_t top_common, std::size_t list_len) {
  if (corpus.total == 0 || corpus.counts.empty()) {
    throw Error(ErrorCode::kEmptyInput, "corpus vocabulary is empty");
  }
  if (book.total == 0) throw Error(ErrorCode::kEmptyInput, "book vocabulary is empty");

  std::vector<std::pair<std::string, std::int64_t>> common(corpus.counts.begin(), corpus.counts.end());
  std::sort(common.begin(), common.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (common.size() > top_common) common.resize(top_common);

  RepresentativeVocabulary out;
  std::vector<VocabularyScore> present;
  const double book_total = static_cast<double>(book.total);
  const double corpus_total = static_cast<double>(corpus.total);
  for (const auto& [word, corpus_count] : common) {
    auto it = book.counts.find(word);
    const std::int64_t count = it == book.counts.end() ? 0 : it->second;
    if (count == 0) {
      if (out.missing.size() < list_len) out.missing.push_back(word);
      continue;
    }
    const double ratio = (static_cast<double>(count) / book_total) /
                         (static_cast<double>(corpus_count) / corpus_total);
    present.push_back({word, ratio, count});
  }

  std::sort(present.begin(), present.end(), [](const VocabularyScore& a, const VocabularyScore& b) {
    return a.ratio != b.ratio ? a.ratio > b.ratio : a.word < b.word;
  });
  out.most.assign(present.begin(), present.begin() + static_cast<std::ptrdiff_t>(std::min(list_len, present.size())));
  std::sort(present.begin(), present.end(), [](const VocabularyScore& a, const VocabularyScore& b) {
    return a.ratio != b.ratio ? a.ratio < b.ratio : a.word < b.word;
  });
  out.least.assign(present.begin(), present.begin() + static_cast<std::ptrdiff_t>(std::min(list_len, present.size())));
  return out;
}

std::vector<PosShare> pos_distribution(const AnnotatedBook& book) {
  std::vector<PosShare> shares;
  for (PosTag tag : kAnalyzedPos) shares.push_back({tag, 0, 0.0});
  std::int64_t total = 0;
  for (const auto& t : tokens(book)) {
    if (!t.pos) continue;
    for (auto& share : shares) {
      if (share.tag == *t.pos) {
        ++share.count;
        ++total;
        break;
      }
    }
  }
  if (total == 0) throw Error(ErrorCode::kUndefined, "no token carries an analyzed POS tag");
  for (auto& share : shares) share.percent = 100.0 * static_cast<double>(share.count) / static_cast<double>(total);
  return shares;
}

GenderShares character_gender_shares(const std::vector<CharacterRecord>& characters) {
  GenderShares out;
  for (const auto& c : characters) {
    switch (c.gender) {
      case Gender::kMale: ++out.male; break;
      case Gender::kFemale: ++out.female; break;
      case Gender::kUnknown: ++out.unknown; break;
    }
  }
  const int known = out.male + out.female;
  if (known > 0) {
    out.male_percent = 100.0 * out.male / known;
    out.female_percent = 100.0 * out.female / known;
  }
  return out;
}

}  // namespace novelscope
