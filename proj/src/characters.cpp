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

#include "novelscope/characters.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/quotes.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

struct FlatToken {
  const Token* token;
  std::size_t sentence;
  bool initial;  // first word of its sentence, its line, or a quotation inside it
};

std::vector<FlatToken> flatten(const AnnotatedBook& book) {
  std::vector<FlatToken> out;
  std::size_t sentence = 0;
  bool line_start = true;
  for (const auto& s : sentences(book)) {
    bool initial = true;
    for (const auto& t : s.tokens) {
      // Verse capitalizes every line, so line starts say nothing about names.
      if (line_start) initial = true;
      line_start = t.ws.find('\n') != std::string::npos;
      const bool word = text::has_alnum(t.text);
      out.push_back({&t, sentence, word && initial});
      if (word) {
        initial = false;
      } else if (t.text == "“" || t.text == "‘" || t.text == "\"" || t.text == ":") {
        // Straight quotes cannot be told apart here; either kind restarts.
        initial = true;
      }
    }
    ++sentence;
  }
  return out;
}

// "I'm", "We'll", "Don't": the suffix after the apostrophe is a clitic.
bool is_contraction(std::string_view folded) {
  static constexpr std::array<std::string_view, 6> kClitics = {"m", "ll", "ve", "d", "re", "t"};
  for (std::string_view mark : {"'", "\u2019"}) {
    const auto at = folded.rfind(mark);
    if (at == std::string_view::npos) continue;
    const auto suffix = folded.substr(at + mark.size());
    if (std::find(kClitics.begin(), kClitics.end(), suffix) != kClitics.end()) return true;
  }
  return false;
}

class Positions {
 public:
  explicit Positions(const std::vector<FlatToken>& flat) {
    indices_.reserve(flat.size());
    for (const auto& f : flat) indices_.push_back(f.token->index);
  }
  // Position of the first token with index >= `index`.
  std::size_t at_or_after(std::int64_t index) const {
    return static_cast<std::size_t>(std::lower_bound(indices_.begin(), indices_.end(), index) -
                                    indices_.begin());
  }

 private:
  std::vector<std::int64_t> indices_;
};

enum class PronounKind { kNone, kMale, kFemale, kFirst, kSecond };

PronounKind pronoun_kind(std::string_view token) {
  const std::string lower = text::fold_case(token);
  static const std::unordered_map<std::string, PronounKind> kTable = {
      {"he", PronounKind::kMale},       {"him", PronounKind::kMale},
      {"his", PronounKind::kMale},      {"himself", PronounKind::kMale},
      {"she", PronounKind::kFemale},    {"her", PronounKind::kFemale},
      {"hers", PronounKind::kFemale},   {"herself", PronounKind::kFemale},
      {"i", PronounKind::kFirst},       {"me", PronounKind::kFirst},
      {"my", PronounKind::kFirst},      {"mine", PronounKind::kFirst},
      {"myself", PronounKind::kFirst},  {"you", PronounKind::kSecond},
      {"your", PronounKind::kSecond},   {"yours", PronounKind::kSecond},
      {"yourself", PronounKind::kSecond}, {"yourselves", PronounKind::kSecond},
      {"thee", PronounKind::kSecond},   {"thou", PronounKind::kSecond},
      {"thy", PronounKind::kSecond},    {"thine", PronounKind::kSecond},
      {"ye", PronounKind::kSecond},
  };
  auto it = kTable.find(lower);
  return it == kTable.end() ? PronounKind::kNone : it->second;
}

bool compatible(Gender a, Gender b) { return a == Gender::kUnknown || b == Gender::kUnknown || a == b; }

bool is_prefix_honorific(std::string_view token, const Lexicons& lex) {
  return lex.is_honorific(token) && !lex.title_honorifics.contains(text::fold_case(token));
}

void describe(MentionCandidate& c, const std::vector<FlatToken>& flat, std::size_t first, std::size_t last,
              const Lexicons& lex) {
  std::vector<std::string> words;
  for (std::size_t k = first; k <= last; ++k) words.push_back(flat[k].token->text);
  c.start = flat[first].token->index;
  c.end = flat[last].token->index;
  c.surface = text::join(words, " ");
  c.honorific.reset();
  c.first_name.reset();
  c.last_name.reset();
  std::size_t name_begin = 0;
  if (words.size() > 1 && lex.is_honorific(words.front())) {
    c.honorific = words.front();
    name_begin = 1;
  }
  if (words.size() - name_begin >= 2) {
    c.first_name = words[name_begin];
    c.last_name = words.back();
  }
}

using ClusterKey = std::tuple<std::string, std::string, Gender>;  // first, last, gender

struct Clustering {
  std::vector<CharacterRecord> characters;
  std::vector<std::optional<int>> assignment;  // candidate -> character id
};

Clustering cluster_impl(const std::vector<MentionCandidate>& candidates, const CharacterOptions& options) {
  const std::size_t n = candidates.size();
  std::vector<Gender> gender(n);
  for (std::size_t i = 0; i < n; ++i) gender[i] = resolve_gender(candidates[i]);

  struct FullName {
    std::vector<std::int64_t> positions;  // sorted
  };
  std::map<ClusterKey, FullName> full_names;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = candidates[i];
    if (c.is_full_name()) full_names[{*c.first_name, *c.last_name, gender[i]}].positions.push_back(c.start);
  }
  for (auto& [key, f] : full_names) std::sort(f.positions.begin(), f.positions.end());

  auto distance_to = [](const FullName& f, std::int64_t pos) {
    auto it = std::lower_bound(f.positions.begin(), f.positions.end(), pos);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    if (it != f.positions.end()) best = *it - pos;
    if (it != f.positions.begin()) best = std::min(best, pos - *std::prev(it));
    return best;
  };

  std::vector<ClusterKey> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = candidates[i];
    if (c.is_full_name()) {
      keys[i] = {*c.first_name, *c.last_name, gender[i]};
      continue;
    }
    const std::string name = c.name();
    auto find_match = [&](bool by_first, bool by_last) -> const ClusterKey* {
      const ClusterKey* best = nullptr;
      std::int64_t best_distance = 0;
      for (const auto& [key, f] : full_names) {
        const auto& [first, last, g] = key;
        if (!((by_first && first == name) || (by_last && last == name))) continue;
        if (!compatible(gender[i], g)) continue;
        const std::int64_t d = distance_to(f, c.start);
        const bool wins = !best || d < best_distance ||
                          (d == best_distance && (f.positions.size() > full_names.at(*best).positions.size() ||
                                                  (f.positions.size() == full_names.at(*best).positions.size() &&
                                                   f.positions.front() < full_names.at(*best).positions.front())));
        if (wins) {
          best = &key;
          best_distance = d;
        }
      }
      return best;
    };
    // After an honorific a single name is a surname ("Mr. Brownlow") unless
    // only a first name matches ("Miss Jane").
    const ClusterKey* match = c.honorific ? find_match(false, true) : find_match(true, true);
    if (!match && c.honorific) match = find_match(true, false);
    keys[i] = match ? *match : ClusterKey{name, "", gender[i]};
  }

  std::map<ClusterKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[keys[i]].push_back(i);

  struct Draft {
    CharacterRecord record;
    std::vector<std::size_t> members;
  };
  std::vector<Draft> drafts;
  for (const auto& [key, members] : groups) {
    if (static_cast<int>(members.size()) < options.min_mentions) continue;
    Draft d;
    d.members = members;
    d.record.gender = std::get<2>(key);
    std::map<std::string, std::int64_t> first_seen;
    std::set<std::string> full_aliases;
    for (std::size_t i : members) {
      const auto& c = candidates[i];
      ++d.record.aliases[c.surface];
      d.record.mentions.push_back(c.start);
      auto [it, inserted] = first_seen.emplace(c.surface, c.start);
      if (!inserted) it->second = std::min(it->second, c.start);
      if (c.is_full_name()) full_aliases.insert(c.surface);
    }
    std::sort(d.record.mentions.begin(), d.record.mentions.end());
    const std::string* canonical = nullptr;
    for (const auto& [alias, count] : d.record.aliases) {
      if (!full_aliases.empty() && !full_aliases.contains(alias)) continue;
      if (!canonical || count > d.record.aliases.at(*canonical) ||
          (count == d.record.aliases.at(*canonical) && first_seen.at(alias) < first_seen.at(*canonical))) {
        canonical = &alias;
      }
    }
    d.record.canonical_name = *canonical;
    drafts.push_back(std::move(d));
  }
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    if (a.record.count() != b.record.count()) return a.record.count() > b.record.count();
    return a.record.mentions.front() < b.record.mentions.front();
  });

  Clustering out;
  out.assignment.assign(n, std::nullopt);
  for (std::size_t id = 0; id < drafts.size(); ++id) {
    drafts[id].record.id = static_cast<int>(id);
    for (std::size_t i : drafts[id].members) out.assignment[i] = static_cast<int>(id);
    out.characters.push_back(std::move(drafts[id].record));
  }
  return out;
}

template <typename Fn>
void for_each_token(AnnotatedBook& book, Fn&& fn) {
  for (auto& section : book.body) {
    for (auto& p : section.paragraphs) {
      for (auto& s : p.sentences) {
        for (auto& t : s.tokens) fn(t);
      }
    }
  }
}

}  // namespace

std::string MentionCandidate::name() const {
  if (!honorific) return surface;
  return surface.substr(std::min(surface.size(), honorific->size() + 1));
}

std::vector<MentionCandidate> detect_person_mentions(const AnnotatedBook& book, const Lexicons& lex) {
  const auto flat = flatten(book);
  std::vector<MentionCandidate> out;
  auto emit = [&](std::size_t first, std::size_t last) {
    MentionCandidate c;
    describe(c, flat, first, last, lex);
    out.push_back(std::move(c));
  };

  const bool has_ner = std::any_of(flat.begin(), flat.end(),
                                   [](const FlatToken& f) { return f.token->ner == NerTag::kPerson; });
  if (has_ner) {
    for (std::size_t k = 0; k < flat.size();) {
      if (flat[k].token->ner != NerTag::kPerson) {
        ++k;
        continue;
      }
      std::size_t last = k;
      while (last + 1 < flat.size() && flat[last + 1].token->ner == NerTag::kPerson &&
             flat[last + 1].sentence == flat[k].sentence) {
        ++last;
      }
      emit(k, last);
      k = last + 1;
    }
    return out;
  }

  std::unordered_map<std::string, int> capitalized_mid;  // by exact text
  std::unordered_map<std::string, int> lowercase;        // by folded text
  for (const auto& f : flat) {
    const auto& t = f.token->text;
    if (!text::has_letter(t)) continue;
    if (text::starts_upper(t)) {
      if (!f.initial) ++capitalized_mid[t];
    } else {
      ++lowercase[text::fold_case(t)];
    }
  }
  auto count = [](const auto& map, const std::string& key) {
    auto it = map.find(key);
    return it == map.end() ? 0 : it->second;
  };
  auto capitalized_word = [&](const std::string& t) {
    return text::starts_upper(t) && text::has_letter(t) && !(text::is_all_upper(t) && text::utf8_length(t) > 1);
  };
  auto eligible = [&](std::size_t k) {
    const auto& f = flat[k];
    const std::string& t = f.token->text;
    if (!capitalized_word(t)) return false;
    const std::string lower = text::fold_case(t);
    if (is_contraction(lower)) return false;
    if (lex.stopwords.contains(lower) || lex.pos.contains(lower) || lex.number_words.contains(lower) ||
        lex.header_keywords.contains(lower) || is_prefix_honorific(t, lex)) {
      return false;
    }
    const int mid = count(capitalized_mid, t);
    if (count(lowercase, lower) > mid) return false;
    return !f.initial || mid > 0;
  };
  auto after_honorific = [&](std::size_t k) {
    return k > 0 && flat[k - 1].sentence == flat[k].sentence && is_prefix_honorific(flat[k - 1].token->text, lex) &&
           capitalized_word(flat[k].token->text) && !lex.pos.contains(text::fold_case(flat[k].token->text));
  };

  for (std::size_t k = 0; k < flat.size();) {
    if (!eligible(k) && !after_honorific(k)) {
      ++k;
      continue;
    }
    std::size_t last = k;
    // A name never continues onto the next line.
    while (last + 1 < flat.size() && flat[last + 1].sentence == flat[k].sentence &&
           flat[last].token->ws.find('\n') == std::string::npos && eligible(last + 1)) {
      ++last;
    }
    emit(k, last);
    k = last + 1;
  }
  return out;
}

void augment_honorifics(std::vector<MentionCandidate>& candidates, const AnnotatedBook& book,
                        const Lexicons& lex) {
  const auto flat = flatten(book);
  const Positions positions(flat);
  for (auto& c : candidates) {
    std::size_t first = positions.at_or_after(c.start);
    const std::size_t last = positions.at_or_after(c.end);
    if (first >= flat.size() || last >= flat.size()) continue;
    if (first > 0 && flat[first - 1].sentence == flat[first].sentence &&
        lex.is_honorific(flat[first - 1].token->text) && !lex.is_honorific(flat[first].token->text)) {
      --first;
    }
    describe(c, flat, first, last, lex);
  }
}

void infer_gender_votes(std::vector<MentionCandidate>& candidates, const AnnotatedBook& book,
                        const Lexicons& lex, const CharacterOptions& options) {
  const auto flat = flatten(book);
  const Positions positions(flat);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].start < candidates[b].start;
  });
  std::vector<std::int64_t> starts;
  for (std::size_t i : order) starts.push_back(candidates[i].start);

  std::map<std::string, std::pair<int, int>> tallies;  // name -> (male, female)
  for (std::size_t k = 0; k < flat.size(); ++k) {
    const auto kind = pronoun_kind(flat[k].token->text);
    if (kind != PronounKind::kMale && kind != PronounKind::kFemale) continue;
    const auto it = std::lower_bound(starts.begin(), starts.end(), flat[k].token->index);
    if (it == starts.begin()) continue;
    const auto& c = candidates[order[static_cast<std::size_t>(it - starts.begin()) - 1]];
    const std::size_t sentence = flat[positions.at_or_after(c.start)].sentence;
    if (sentence + static_cast<std::size_t>(options.pronoun_window) < flat[k].sentence) continue;
    auto& [male, female] = tallies[c.name()];
    (kind == PronounKind::kMale ? male : female) += 1;
  }

  for (auto& c : candidates) {
    c.honorific_vote.reset();
    c.pronoun_vote.reset();
    c.name_vote.reset();
    const std::string name = c.name();
    const std::string& honorific = c.honorific ? *c.honorific : name;
    if (lex.is_honorific(honorific)) {
      const Gender g = lex.honorific_gender(honorific);
      if (g != Gender::kUnknown) c.honorific_vote = g;
    }
    if (auto it = tallies.find(name); it != tallies.end() && it->second.first != it->second.second) {
      c.pronoun_vote = it->second.first > it->second.second ? Gender::kMale : Gender::kFemale;
    }
    const std::string first = text::fold_case(c.first_name ? *c.first_name : name);
    if (auto it = lex.first_names.find(first); it != lex.first_names.end() && it->second != Gender::kUnknown) {
      c.name_vote = it->second;
    }
  }
}

Gender resolve_gender(const MentionCandidate& c) {
  if (c.honorific_vote) return *c.honorific_vote;
  if (c.pronoun_vote) return *c.pronoun_vote;
  if (c.name_vote) return *c.name_vote;
  return Gender::kUnknown;
}

std::vector<CharacterRecord> cluster_mentions(const std::vector<MentionCandidate>& candidates,
                                              const CharacterOptions& options) {
  return cluster_impl(candidates, options).characters;
}

void attach_pronoun_counts(AnnotatedBook& book, const CharacterOptions& options) {
  for (auto& c : book.characters) c.gcc = c.fpcc = c.spcc = 0;
  const auto flat = flatten(book);
  const Positions positions(flat);

  struct Mention {
    std::int64_t start;
    std::size_t sentence;
    int character;
  };
  std::vector<Mention> mentions;
  std::map<int, std::size_t> slot;  // character id -> position in book.characters
  for (std::size_t i = 0; i < book.characters.size(); ++i) {
    const auto& c = book.characters[i];
    slot[c.id] = i;
    for (auto m : c.mentions) {
      const std::size_t p = positions.at_or_after(m);
      if (p < flat.size()) mentions.push_back({m, flat[p].sentence, c.id});
    }
  }
  std::sort(mentions.begin(), mentions.end(), [](const Mention& a, const Mention& b) { return a.start < b.start; });
  std::map<int, const QuoteSpan*> quotes;
  for (const auto& q : book.quotes) quotes[q.id] = &q;

  for (const auto& f : flat) {
    const auto kind = pronoun_kind(f.token->text);
    if (kind == PronounKind::kNone) continue;
    if (kind == PronounKind::kMale || kind == PronounKind::kFemale) {
      const Gender g = kind == PronounKind::kMale ? Gender::kMale : Gender::kFemale;
      auto it = std::lower_bound(mentions.begin(), mentions.end(), f.token->index,
                                 [](const Mention& m, std::int64_t index) { return m.start < index; });
      while (it != mentions.begin()) {
        --it;
        if (it->sentence + static_cast<std::size_t>(options.pronoun_window) < f.sentence) break;
        auto& c = book.characters[slot.at(it->character)];
        if (compatible(c.gender, g)) {
          ++c.gcc;
          break;
        }
      }
      continue;
    }
    if (!f.token->quote) continue;
    auto q = quotes.find(*f.token->quote);
    if (q == quotes.end()) continue;
    const auto& target = kind == PronounKind::kFirst ? q->second->speaker : q->second->addressee;
    if (!target) continue;
    auto s = slot.find(*target);
    if (s == slot.end()) continue;
    auto& c = book.characters[s->second];
    (kind == PronounKind::kFirst ? c.fpcc : c.spcc) += 1;
  }
}

std::vector<std::string> annotate_characters(AnnotatedBook& book, const Lexicons& lex,
                                             const CharacterOptions& options) {
  if (!book.meta.has_phase(Phase::kLinguistic)) {
    throw Error(ErrorCode::kMissingPhase,
                fmt::format("{}: missing phase stamp 'linguistic'", book.meta.source_id));
  }
  for_each_token(book, [](Token& t) { t.character.reset(); });

  auto candidates = detect_person_mentions(book, lex);
  augment_honorifics(candidates, book, lex);
  infer_gender_votes(candidates, book, lex, options);
  auto clustering = cluster_impl(candidates, options);
  book.characters = std::move(clustering.characters);

  std::vector<std::pair<std::int64_t, std::int64_t>> spans;  // sorted by start
  std::vector<int> owners;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!clustering.assignment[i]) continue;
    spans.emplace_back(candidates[i].start, candidates[i].end);
    owners.push_back(*clustering.assignment[i]);
  }
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spans[a] < spans[b]; });
  std::size_t cursor = 0;
  for_each_token(book, [&](Token& t) {
    while (cursor < order.size() && spans[order[cursor]].second < t.index) ++cursor;
    if (cursor < order.size() && spans[order[cursor]].first <= t.index) t.character = owners[order[cursor]];
  });

  auto warnings = extract_quotes(book);
  attribute_quotes(book, lex);
  attach_pronoun_counts(book, options);
  book.meta.add_phase(Phase::kCharacters);
  return warnings;
}

Timeline build_occurrence_timeline(const AnnotatedBook& book, std::size_t top_k) {
  Timeline timeline;
  const auto flat = flatten(book);
  if (flat.empty()) return timeline;
  const Positions positions(flat);
  const double n = static_cast<double>(flat.size());

  std::vector<const CharacterRecord*> ranked;
  for (const auto& c : book.characters) ranked.push_back(&c);
  std::stable_sort(ranked.begin(), ranked.end(), [](const CharacterRecord* a, const CharacterRecord* b) {
    if (a->count() != b->count()) return a->count() > b->count();
    return !a->mentions.empty() && !b->mentions.empty() && a->mentions.front() < b->mentions.front();
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  for (const auto* c : ranked) {
    TimelineSeries series{c->id, c->canonical_name, {}};
    for (auto m : c->mentions) series.positions.push_back(static_cast<double>(positions.at_or_after(m)) / n);
    timeline.series.push_back(std::move(series));
  }

  std::size_t seen = 0;
  for (std::size_t s = 0; s < book.body.size(); ++s) {
    std::size_t count = 0;
    for (const auto& p : book.body[s].paragraphs) {
      for (const auto& sentence : p.sentences) count += sentence.tokens.size();
    }
    if (s > 0 && count > 0 && seen > 0) timeline.chapter_breaks.push_back(static_cast<double>(seen) / n);
    seen += count;
  }
  return timeline;
}

std::int64_t count_cooccurrences(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                 std::int64_t window) {
  std::int64_t total = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::int64_t x : a) {
    while (lo < b.size() && b[lo] < x - window) ++lo;
    if (hi < lo) hi = lo;
    while (hi < b.size() && b[hi] <= x + window) ++hi;
    total += static_cast<std::int64_t>(hi - lo);
  }
  return total;
}

InteractionNetwork build_interaction_network(const std::vector<CharacterRecord>& characters,
                                             std::int64_t window, std::int64_t min_co) {
  InteractionNetwork network;
  std::vector<const CharacterRecord*> sorted;
  for (const auto& c : characters) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
  for (const auto* c : sorted) network.nodes.push_back({c->id, c->canonical_name, c->gender, c->count()});
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const auto weight = count_cooccurrences(sorted[i]->mentions, sorted[j]->mentions, window);
      if (weight > min_co) network.edges.push_back({sorted[i]->id, sorted[j]->id, weight});
    }
  }
  return network;
}

ProtagonistStats protagonist_stats(const std::vector<CharacterRecord>& characters) {
  ProtagonistStats stats;
  if (characters.empty()) return stats;
  std::vector<const CharacterRecord*> ranked;
  for (const auto& c : characters) ranked.push_back(&c);
  std::sort(ranked.begin(), ranked.end(), [](const CharacterRecord* a, const CharacterRecord* b) {
    if (a->count() != b->count()) return a->count() > b->count();
    const auto fa = a->mentions.empty() ? std::numeric_limits<std::int64_t>::max() : a->mentions.front();
    const auto fb = b->mentions.empty() ? std::numeric_limits<std::int64_t>::max() : b->mentions.front();
    if (fa != fb) return fa < fb;
    return a->id < b->id;
  });
  stats.protagonist = ranked[0]->id;
  if (ranked.size() >= 2 && ranked[1]->count() > 0) {
    stats.top2_ratio = static_cast<double>(ranked[0]->count()) / static_cast<double>(ranked[1]->count());
  }
  return stats;
}

}  // namespace novelscope
