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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "novelscope/analytics_book.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/linguistic.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

constexpr std::size_t kLinsearWindow = 100;
constexpr std::size_t kLinsearMinTail = 50;

bool is_clitic(std::string_view t) { return t == "'s" || t == "’s" || t == "'S" || t == "’S"; }

bool is_word(const Token& t) { return text::has_alnum(t.text) && !is_clitic(t.text); }

bool is_numeric(std::string_view t) {
  return std::all_of(t.begin(), t.end(), [](char c) { return (c >= '0' && c <= '9') || c == ',' || c == '.'; });
}

bool familiar(const Token& t, const std::unordered_set<std::string>& list) {
  if (is_numeric(t.text)) return true;
  if (list.contains(text::fold_case(t.text))) return true;
  return t.lemma && list.contains(*t.lemma);
}

// Works on any forward range of Sentence, so books are not copied.
template <typename Sentences>
ReadabilityCounts count_sentences(Sentences&& sentences, const Lexicons& lex) {
  ReadabilityCounts counts;
  struct WordInfo {
    int syllables;
    std::size_t sentence;
  };
  std::vector<WordInfo> words;
  std::vector<std::size_t> last_word_of_sentence;

  std::size_t s = 0;
  for (const Sentence& sentence : sentences) {
    bool first = true;
    std::size_t in_sentence = 0;
    for (const auto& t : sentence.tokens) {
      if (!is_word(t)) continue;
      ++in_sentence;
      const int syllables = std::max(1, count_syllables(t.text));
      counts.syllables += syllables;
      for (std::size_t i = 0; i < t.text.size();) {
        const char32_t cp = text::decode_utf8(t.text, i);
        if (text::is_letter(cp) || text::is_digit(cp)) ++counts.characters;
      }
      if (syllables >= 3) {
        ++counts.polysyllables;
        if (first || !text::starts_upper(t.text)) ++counts.complex_words;
      }
      if (!familiar(t, lex.dale_chall)) ++counts.dale_chall_unfamiliar;
      if (!familiar(t, lex.spache)) ++counts.spache_unfamiliar;
      words.push_back({syllables, s});
      first = false;
    }
    if (in_sentence > 0) {
      ++counts.sentences;
      last_word_of_sentence.push_back(words.size() - 1);
    }
    ++s;
  }
  counts.words = static_cast<std::int64_t>(words.size());

  // A window's sentences are those whose last word falls inside it.
  std::vector<bool> ends_sentence(words.size(), false);
  for (std::size_t w : last_word_of_sentence) ends_sentence[w] = true;
  for (std::size_t begin = 0; begin < words.size(); begin += kLinsearWindow) {
    const std::size_t end = std::min(words.size(), begin + kLinsearWindow);
    if (end - begin < kLinsearMinTail && begin > 0) break;
    int easy = 0;
    int hard = 0;
    int sentences_in_window = 0;
    for (std::size_t w = begin; w < end; ++w) {
      (words[w].syllables >= 3 ? hard : easy) += 1;
      sentences_in_window += ends_sentence[w];
    }
    const double x = (easy + 3.0 * hard) / std::max(1, sentences_in_window);
    counts.linsear_windows.push_back(x > 20 ? x / 2 : (x - 2) / 2);
  }
  return counts;
}

}  // namespace

ReadabilityCounts readability_counts(const std::vector<Sentence>& sentences, const Lexicons& lex) {
  return count_sentences(sentences, lex);
}

ReadabilityScores readability_scores(const ReadabilityCounts& c) {
  ReadabilityScores scores;
  for (auto key : kReadabilityMetrics) scores.emplace(std::string(key), std::nullopt);
  if (c.words == 0 || c.sentences == 0) return scores;

  const double w = static_cast<double>(c.words);
  const double s = static_cast<double>(c.sentences);
  const double words_per_sentence = w / s;
  const double dale_pdw = 100.0 * static_cast<double>(c.dale_chall_unfamiliar) / w;
  const double spache_puw = 100.0 * static_cast<double>(c.spache_unfamiliar) / w;

  scores["flesch_reading_ease"] = 206.835 - 1.015 * words_per_sentence - 84.6 * (static_cast<double>(c.syllables) / w);
  scores["dale_chall"] = 0.1579 * dale_pdw + 0.0496 * words_per_sentence + (dale_pdw > 5 ? 3.6365 : 0.0);
  scores["ari"] = 4.71 * (static_cast<double>(c.characters) / w) + 0.5 * words_per_sentence - 21.43;
  scores["coleman_liau"] =
      0.0588 * (100.0 * static_cast<double>(c.characters) / w) - 0.296 * (100.0 * s / w) - 15.8;
  scores["gunning_fog"] = 0.4 * (words_per_sentence + 100.0 * static_cast<double>(c.complex_words) / w);
  scores["smog"] = 1.0430 * std::sqrt(static_cast<double>(c.polysyllables) * 30.0 / s) + 3.1291;
  scores["spache"] = 0.121 * words_per_sentence + 0.082 * spache_puw + 0.659;
  if (!c.linsear_windows.empty()) {
    scores["linsear_write"] = std::accumulate(c.linsear_windows.begin(), c.linsear_windows.end(), 0.0) /
                              static_cast<double>(c.linsear_windows.size());
  }
  return scores;
}

ReadabilityScores readability_suite(const AnnotatedBook& book, const Lexicons& lex) {
  return readability_scores(count_sentences(sentences(book), lex));
}

ReadabilityScores readability_of_text(std::string_view input, const Lexicons& lex) {
  std::vector<Sentence> all;
  for (auto& p : split_sentences(tokenize(input, lex))) {
    for (auto& s : p.sentences) {
      pos_tag(s, lex);
      all.push_back(std::move(s));
    }
  }
  return readability_scores(readability_counts(all, lex));
}

}  // namespace novelscope
