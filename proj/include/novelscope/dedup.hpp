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

// Near-duplicate detection with MinHash over word shingles.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace novelscope {

struct FingerprintOptions {
  std::size_t shingle_words = 5;
  std::size_t num_hashes = 128;
  std::uint64_t seed = 0x6e6f76656c73636fULL;
};

struct BookFingerprint {
  std::string normalized_title;
  std::string normalized_author;
  std::vector<std::uint64_t> signature;  // one minimum per hash function
  bool operator==(const BookFingerprint&) const = default;
};

// Lowercase ASCII words without punctuation or diacritics, single-spaced.
std::string normalize_words(std::string_view text);
// normalize_words, then a leading "a", "an" or "the" is dropped.
std::string normalize_field(std::string_view text);

// Hashes of every run of `shingle_words` consecutive normalized words.
std::unordered_set<std::uint64_t> shingle_set(std::string_view body, std::size_t shingle_words);

// Throws Error(kTooShort) when the body has fewer words than one shingle.
BookFingerprint fingerprint(std::string_view body, std::string_view title, std::string_view author,
                            const FingerprintOptions& options = {});

// Fraction of equal signature positions. Throws Error(kLengthMismatch).
double estimate_similarity(const BookFingerprint& a, const BookFingerprint& b);

struct CorpusEntry {
  std::string id;
  std::string title;
  std::string author;
  std::optional<int> year;
  std::string corpus;
  std::size_t text_length = 0;
  BookFingerprint fingerprint;
  std::optional<std::string> representative_of;  // set on removed duplicates
  bool operator==(const CorpusEntry&) const = default;
};

struct CorpusIndex {
  std::vector<CorpusEntry> entries;

  bool is_kept(std::string_view id) const;
  std::vector<std::string> kept_ids() const;
  bool operator==(const CorpusIndex&) const = default;
};

struct DedupOptions {
  bool title_author_match = true;
  double content_threshold = 0.8;
};

// Groups entries transitively and keeps the longest text of each group
// (ties: smallest id). Output entries are sorted by id.
CorpusIndex dedup_corpus(CorpusIndex index, const DedupOptions& options = {});

// One JSON object per line: id, title, author, year, corpus, length,
// normalized_title, normalized_author, fingerprint (hex strings),
// representative_of.
std::string to_jsonl(const CorpusIndex& index);
CorpusIndex parse_jsonl(std::string_view text);

}  // namespace novelscope
