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

#include "novelscope/dedup.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "novelscope/error.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

using nlohmann::json;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::string_view> words_of(std::string_view normalized) {
  std::vector<std::string_view> words;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto space = normalized.find(' ', start);
    if (space == std::string_view::npos) space = normalized.size();
    if (space > start) words.push_back(normalized.substr(start, space - start));
    start = space + 1;
  }
  return words;
}

std::uint64_t parse_hex(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t value = std::stoull(s, &used, 16);
  if (used != s.size()) throw Error(ErrorCode::kParse, fmt::format("bad hex value '{}'", s));
  return value;
}

}  // namespace

std::string normalize_words(std::string_view text) { return text::ascii_fold_words(text); }

std::string normalize_field(std::string_view text) {
  std::string words = normalize_words(text);
  for (std::string_view article : {"a ", "an ", "the "}) {
    if (words.starts_with(article)) return words.substr(article.size());
  }
  return words;
}

std::unordered_set<std::uint64_t> shingle_set(std::string_view body, std::size_t shingle_words) {
  const std::string normalized = normalize_words(body);
  const auto words = words_of(normalized);
  std::unordered_set<std::uint64_t> out;
  if (shingle_words == 0 || words.size() < shingle_words) return out;
  for (std::size_t i = 0; i + shingle_words <= words.size(); ++i) {
    // Hash of the words joined by single spaces, computed without copying.
    const char* begin = words[i].data();
    const char* end = words[i + shingle_words - 1].data() + words[i + shingle_words - 1].size();
    out.insert(text::fnv1a64(std::string_view(begin, static_cast<std::size_t>(end - begin))));
  }
  return out;
}

BookFingerprint fingerprint(std::string_view body, std::string_view title, std::string_view author,
                            const FingerprintOptions& options) {
  const auto shingles = shingle_set(body, options.shingle_words);
  if (shingles.empty()) {
    throw Error(ErrorCode::kTooShort,
                fmt::format("text has fewer than {} words", options.shingle_words));
  }
  std::vector<std::uint64_t> seeds(options.num_hashes);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = text::splitmix64(options.seed + i);

  BookFingerprint fp;
  fp.normalized_title = normalize_field(title);
  fp.normalized_author = normalize_field(author);
  fp.signature.assign(options.num_hashes, std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t shingle : shingles) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      fp.signature[i] = std::min(fp.signature[i], text::splitmix64(shingle ^ seeds[i]));
    }
  }
  return fp;
}

double estimate_similarity(const BookFingerprint& a, const BookFingerprint& b) {
  if (a.signature.size() != b.signature.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("signature lengths differ: {} vs {}", a.signature.size(),
                            b.signature.size()));
  }
  if (a.signature.empty()) return 0.0;
  std::size_t equal = 0;
  for (std::size_t i = 0; i < a.signature.size(); ++i) equal += a.signature[i] == b.signature[i];
  return static_cast<double>(equal) / static_cast<double>(a.signature.size());
}

bool CorpusIndex::is_kept(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return !e.representative_of.has_value();
  }
  return false;
}

std::vector<std::string> CorpusIndex::kept_ids() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.representative_of) out.push_back(e.id);
  }
  return out;
}

CorpusIndex dedup_corpus(CorpusIndex index, const DedupOptions& options) {
  auto& entries = index.entries;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  const std::size_t n = entries.size();
  UnionFind groups(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = entries[i].fingerprint;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = entries[j].fingerprint;
      const bool same_work = options.title_author_match && !a.normalized_title.empty() &&
                             !a.normalized_author.empty() &&
                             a.normalized_title == b.normalized_title &&
                             a.normalized_author == b.normalized_author;
      if (same_work || estimate_similarity(a, b) >= options.content_threshold) groups.unite(i, j);
    }
  }

  std::map<std::size_t, std::size_t> representative;  // root -> chosen member
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = groups.find(i);
    auto [it, inserted] = representative.try_emplace(root, i);
    // Entries are in id order, so a strictly longer text is the only way to win.
    if (!inserted && entries[i].text_length > entries[it->second].text_length) it->second = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t chosen = representative[groups.find(i)];
    if (chosen == i) {
      entries[i].representative_of.reset();
    } else {
      entries[i].representative_of = entries[chosen].id;
    }
  }
  return index;
}

std::string to_jsonl(const CorpusIndex& index) {
  std::string out;
  for (const auto& e : index.entries) {
    json signature = json::array();
    for (auto h : e.fingerprint.signature) signature.push_back(fmt::format("{:016x}", h));
    json line = {
        {"id", e.id},
        {"title", e.title},
        {"author", e.author},
        {"year", e.year ? json(*e.year) : json(nullptr)},
        {"corpus", e.corpus},
        {"length", e.text_length},
        {"normalized_title", e.fingerprint.normalized_title},
        {"normalized_author", e.fingerprint.normalized_author},
        {"fingerprint", std::move(signature)},
        {"representative_of", e.representative_of ? json(*e.representative_of) : json(nullptr)},
    };
    out += line.dump();
    out += '\n';
  }
  return out;
}

CorpusIndex parse_jsonl(std::string_view text) {
  CorpusIndex index;
  int number = 0;
  for (const auto& line : text::split(text, '\n')) {
    ++number;
    if (text::is_blank(line)) continue;
    try {
      const json j = json::parse(line);
      CorpusEntry e;
      e.id = j.at("id").get<std::string>();
      e.title = j.at("title").get<std::string>();
      e.author = j.at("author").get<std::string>();
      if (!j.at("year").is_null()) e.year = j.at("year").get<int>();
      e.corpus = j.at("corpus").get<std::string>();
      e.text_length = j.at("length").get<std::size_t>();
      e.fingerprint.normalized_title = j.at("normalized_title").get<std::string>();
      e.fingerprint.normalized_author = j.at("normalized_author").get<std::string>();
      for (const auto& h : j.at("fingerprint")) e.fingerprint.signature.push_back(parse_hex(h.get<std::string>()));
      if (!j.at("representative_of").is_null()) {
        e.representative_of = j.at("representative_of").get<std::string>();
      }
      index.entries.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::kParse, fmt::format("manifest line {}: {}", number, ex.what()));
    }
  }
  return index;
}

}  // namespace novelscope
