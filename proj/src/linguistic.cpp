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

#include "novelscope/linguistic.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

struct CodePoint {
  char32_t cp;
  std::size_t pos;  // byte offset of the first byte
  std::size_t len;
};

std::vector<CodePoint> code_points(std::string_view s) {
  std::vector<CodePoint> out;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t start = i;
    const char32_t cp = text::decode_utf8(s, i);
    out.push_back({cp, start, i - start});
  }
  return out;
}

bool is_dash_cp(char32_t cp) { return cp == 0x2014 || cp == 0x2015; }

struct Piece {
  std::size_t begin;
  std::size_t end;
};

// Words whose "'s" is a contraction of "is" or "us", not a possessive.
const std::unordered_set<std::string>& contraction_stems() {
  static const std::unordered_set<std::string> stems = {
      "it", "he", "she", "that", "there", "what", "who", "where", "here", "let", "how", "this"};
  return stems;
}

bool is_initial_or_acronym(const std::vector<CodePoint>& cps, std::size_t b, std::size_t e) {
  // (letter '.')+ covering [b, e)
  const std::size_t n = e - b;
  if (n < 2 || n % 2 != 0) return false;
  for (std::size_t i = b; i < e; i += 2) {
    if (!text::is_letter(cps[i].cp) || cps[i + 1].cp != '.') return false;
  }
  if (n == 2) {
    // A lone capital initial, but "I." is the pronoun ending a sentence.
    return text::is_upper(cps[b].cp) && cps[b].cp != 'I';
  }
  return true;
}

// Splits one run of non-space, non-dash characters.
void split_word(std::string_view chunk, std::size_t base, const Lexicons& lex,
                std::vector<Piece>& out) {
  const auto cps = code_points(chunk);
  std::size_t b = 0;
  std::size_t e = cps.size();
  auto byte = [&](std::size_t k) { return k < cps.size() ? cps[k].pos : chunk.size(); };

  std::vector<Piece> leading;
  while (b < e && text::is_punct(cps[b].cp)) {
    std::size_t run = b + 1;
    if (cps[b].cp == '.') {
      while (run < e && cps[run].cp == '.') ++run;
    }
    leading.push_back({base + byte(b), base + byte(run)});
    b = run;
  }

  std::vector<Piece> trailing;  // collected back to front
  while (e > b && text::is_punct(cps[e - 1].cp)) {
    const char32_t cp = cps[e - 1].cp;
    if (cp == '.') {
      const std::string core = text::fold_case(chunk.substr(byte(b), byte(e) - byte(b)));
      if (e - b >= 2 && cps[e - 2].cp != '.' &&
          (lex.abbreviations.contains(core) || is_initial_or_acronym(cps, b, e))) {
        break;
      }
      std::size_t run = e - 1;
      while (run > b && cps[run - 1].cp == '.') --run;
      trailing.push_back({base + byte(run), base + byte(e)});
      e = run;
      continue;
    }
    trailing.push_back({base + byte(e - 1), base + byte(e)});
    --e;
  }

  if (b < e) {
    std::size_t core_end = e;
    // Possessive "'s" / "’s" after a word becomes its own token.
    if (e - b > 2 && (cps[e - 1].cp == 's' || cps[e - 1].cp == 'S') &&
        (cps[e - 2].cp == '\'' || cps[e - 2].cp == 0x2019) && !text::is_punct(cps[e - 3].cp)) {
      const std::string stem = text::fold_case(chunk.substr(byte(b), byte(e - 2) - byte(b)));
      if (!contraction_stems().contains(stem)) core_end = e - 2;
    }
    out.insert(out.end(), leading.begin(), leading.end());
    out.push_back({base + byte(b), base + byte(core_end)});
    if (core_end != e) out.push_back({base + byte(core_end), base + byte(e)});
  } else {
    out.insert(out.end(), leading.begin(), leading.end());
  }
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

// Splits a whitespace-free chunk at dash runs ("--", em dash) first.
void split_chunk(std::string_view chunk, std::size_t base, const Lexicons& lex,
                 std::vector<Piece>& out) {
  const auto cps = code_points(chunk);
  std::size_t start = 0;  // code point index of the pending word
  std::size_t i = 0;
  auto byte = [&](std::size_t k) { return k < cps.size() ? cps[k].pos : chunk.size(); };
  while (i < cps.size()) {
    std::size_t run = i;
    if (is_dash_cp(cps[i].cp)) {
      while (run < cps.size() && is_dash_cp(cps[run].cp)) ++run;
    } else if (cps[i].cp == '-' && i + 1 < cps.size() && cps[i + 1].cp == '-') {
      while (run < cps.size() && cps[run].cp == '-') ++run;
    }
    if (run == i) {
      ++i;
      continue;
    }
    if (start < i) split_word(chunk.substr(byte(start), byte(i) - byte(start)), base + byte(start), lex, out);
    out.push_back({base + byte(i), base + byte(run)});
    start = i = run;
  }
  if (start < cps.size()) {
    split_word(chunk.substr(byte(start)), base + byte(start), lex, out);
  }
}

bool starts_lower_letter(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  const char32_t cp = text::decode_utf8(s, i);
  return text::is_letter(cp) && !text::is_upper(cp);
}

int newline_count(std::string_view ws) {
  return static_cast<int>(std::count(ws.begin(), ws.end(), '\n'));
}

enum class QuoteRole { kNone, kOpen, kClose };

QuoteRole double_quote_role(std::string_view t, bool open) {
  if (t == "“") return QuoteRole::kOpen;
  if (t == "”") return QuoteRole::kClose;
  if (t == "\"") return open ? QuoteRole::kClose : QuoteRole::kOpen;
  return QuoteRole::kNone;
}

bool is_closer(std::string_view t, bool double_open) {
  if (t == ")" || t == "]" || t == "’" || t == "'") return true;
  return double_quote_role(t, double_open) == QuoteRole::kClose;
}

const std::unordered_set<std::string>& verb_triggers() {
  static const std::unordered_set<std::string> words = {
      "i",     "you",    "he",    "she",   "we",    "they",   "to",    "will",   "would",
      "shall", "should", "can",   "could", "may",   "might",  "must",  "did",    "do",
      "does",  "not",    "never", "had",   "have",  "has",    "was",   "were",   "is",
      "am",    "are",    "be",    "been",  "being", "who"};
  return words;
}

bool ends_with(std::string_view s, std::string_view suffix) { return s.ends_with(suffix); }

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

// Undoes "running" -> "runn" doubling or restores a dropped 'e' ("mak" -> "make").
std::string repair_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) &&
      std::string_view("lszf").find(stem[n - 1]) == std::string_view::npos) {
    stem.pop_back();
    return stem;
  }
  if (n == 3 && is_consonant(stem[0]) && is_vowel(stem[1]) && is_consonant(stem[2]) &&
      std::string_view("wxy").find(stem[2]) == std::string_view::npos) {
    stem.push_back('e');
  }
  return stem;
}

std::string strip_plural(const std::string& w) {
  const std::size_t n = w.size();
  if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
  if (n > 3 && ends_with(w, "es")) {
    const std::string_view stem(w.data(), n - 2);
    if (stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") || stem.ends_with("ch") ||
        stem.ends_with("sh")) {
      return std::string(stem);
    }
  }
  if (n > 3 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, n - 1);
  }
  return w;
}

std::string strip_verb(const std::string& w) {
  const std::size_t n = w.size();
  if (n > 4 && ends_with(w, "ing")) {
    const std::string stem = w.substr(0, n - 3);
    if (stem.size() >= 2 && has_vowel(stem)) return repair_stem(stem);
    return w;
  }
  if (n > 3 && ends_with(w, "ied")) return n > 4 ? w.substr(0, n - 3) + "y" : w.substr(0, n - 1);
  if (n > 3 && ends_with(w, "ed")) {
    const std::string stem = w.substr(0, n - 2);
    if (stem.size() < 3) return w.substr(0, n - 1);  // "used" -> "use"
    if (!has_vowel(stem)) return w;
    return repair_stem(stem);
  }
  return strip_plural(w);
}

PosTag parse_upos(std::string_view upos, int line) {
  static const std::array<std::pair<std::string_view, PosTag>, 20> kMap = {{
      {"NOUN", PosTag::kNoun},  {"PROPN", PosTag::kNoun}, {"VERB", PosTag::kVerb},
      {"AUX", PosTag::kVerb},   {"ADJ", PosTag::kAdj},    {"ADV", PosTag::kAdv},
      {"PRON", PosTag::kPron},  {"INTJ", PosTag::kIntj},  {"ADP", PosTag::kAdp},
      {"CCONJ", PosTag::kConj}, {"SCONJ", PosTag::kConj}, {"CONJ", PosTag::kConj},
      {"DET", PosTag::kDet},    {"NUM", PosTag::kNum},    {"PUNCT", PosTag::kPunct},
      {"SYM", PosTag::kOther},  {"X", PosTag::kOther},    {"PART", PosTag::kOther},
      {"OTHER", PosTag::kOther}, {"_", PosTag::kOther},
  }};
  for (const auto& [name, tag] : kMap) {
    if (name == upos) return tag;
  }
  throw Error(ErrorCode::kParse, fmt::format("line {}: unknown POS tag '{}'", line, upos));
}

std::optional<NerTag> parse_external_ner(std::string_view ner) {
  if (ner == "O" || ner == "_" || ner.empty()) return std::nullopt;
  for (std::string_view person : {"PERSON", "PER", "B-PER", "I-PER", "B-PERSON", "I-PERSON"}) {
    if (ner == person) return NerTag::kPerson;
  }
  return NerTag::kOther;
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

bool is_terminator(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t i = 0; i < token.size();) {
    const char32_t cp = text::decode_utf8(token, i);
    if (cp != '.' && cp != '!' && cp != '?' && cp != 0x2026) return false;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view input, const Lexicons& lex, std::size_t base_offset) {
  std::vector<Piece> pieces;
  const auto cps = code_points(input);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (text::is_space(cps[i].cp)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !text::is_space(cps[j].cp)) ++j;
    const std::size_t begin = cps[i].pos;
    const std::size_t end = j < cps.size() ? cps[j].pos : input.size();
    split_chunk(input.substr(begin, end - begin), begin, lex, pieces);
    i = j;
  }

  std::vector<Token> tokens;
  tokens.reserve(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const std::size_t next = k + 1 < pieces.size() ? pieces[k + 1].begin : input.size();
    Token t;
    t.text = std::string(input.substr(pieces[k].begin, pieces[k].end - pieces[k].begin));
    t.ws = std::string(input.substr(pieces[k].end, next - pieces[k].end));
    t.index = static_cast<std::int64_t>(k);
    t.offset = static_cast<std::int64_t>(base_offset + pieces[k].begin);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<Paragraph> split_sentences(std::vector<Token> tokens) {
  std::vector<Paragraph> paragraphs;
  std::size_t p_begin = 0;
  while (p_begin < tokens.size()) {
    std::size_t p_end = p_begin;
    while (p_end < tokens.size()) {
      const bool last = newline_count(tokens[p_end].ws) >= 2;
      ++p_end;
      if (last) break;
    }

    Paragraph paragraph;
    Sentence current;
    bool double_open = false;
    auto take = [&](std::size_t k) {
      const auto role = double_quote_role(tokens[k].text, double_open);
      if (role == QuoteRole::kOpen) double_open = true;
      if (role == QuoteRole::kClose) double_open = false;
      current.tokens.push_back(std::move(tokens[k]));
    };
    for (std::size_t k = p_begin; k < p_end; ++k) {
      const bool ends = is_terminator(tokens[k].text);
      take(k);
      if (!ends) continue;
      while (k + 1 < p_end &&
             (is_terminator(tokens[k + 1].text) || is_closer(tokens[k + 1].text, double_open))) {
        take(++k);
      }
      if (k + 1 < p_end && starts_lower_letter(tokens[k + 1].text)) continue;
      paragraph.sentences.push_back(std::move(current));
      current = Sentence{};
    }
    if (!current.tokens.empty()) paragraph.sentences.push_back(std::move(current));
    paragraphs.push_back(std::move(paragraph));
    p_begin = p_end;
  }
  return paragraphs;
}

void pos_tag(Sentence& sentence, const Lexicons& lex) {
  bool initial = true;  // next word starts the sentence or an inner quotation
  std::string previous;
  for (auto& t : sentence.tokens) {
    const std::string lower = text::fold_case(t.text);
    if (t.text == "'s" || t.text == "’s" || t.text == "'S") {
      t.pos = PosTag::kOther;
      previous = lower;
      initial = false;
      continue;
    }
    if (!text::has_alnum(t.text)) {
      t.pos = PosTag::kPunct;
      const auto role = double_quote_role(t.text, false);
      if (role == QuoteRole::kOpen || t.text == "‘" || t.text == ":") initial = true;
      continue;
    }

    const bool numeric = std::all_of(t.text.begin(), t.text.end(), [](char c) {
      return (c >= '0' && c <= '9') || c == ',' || c == '.';
    });
    const auto entry = lex.pos.find(lower);
    const bool in_lexicon = entry != lex.pos.end();
    const PosTag lexicon_tag = in_lexicon ? entry->second : PosTag::kNoun;
    const bool closed = in_lexicon && (lexicon_tag == PosTag::kPron || lexicon_tag == PosTag::kDet ||
                                       lexicon_tag == PosTag::kAdp || lexicon_tag == PosTag::kConj ||
                                       lexicon_tag == PosTag::kIntj || lexicon_tag == PosTag::kNum);

    PosTag tag = PosTag::kNoun;
    if (numeric) {
      tag = PosTag::kNum;
    } else if (closed) {
      tag = lexicon_tag;
    } else if (!initial && text::starts_upper(t.text)) {
      tag = PosTag::kNoun;
    } else if (in_lexicon) {
      tag = lexicon_tag;
    } else if (lower.size() > 4 && ends_with(lower, "ly")) {
      tag = PosTag::kAdv;
    } else if (lower.size() > 4 &&
               (ends_with(lower, "ous") || ends_with(lower, "ful") || ends_with(lower, "ive") ||
                ends_with(lower, "able") || ends_with(lower, "less") || ends_with(lower, "ible"))) {
      tag = PosTag::kAdj;
    } else if (lower.size() > 4 && (ends_with(lower, "ed") || ends_with(lower, "ing"))) {
      tag = PosTag::kVerb;
    } else if (verb_triggers().contains(previous)) {
      tag = PosTag::kVerb;
    }
    t.pos = tag;
    t.lemma = lemmatize(t.text, tag, lex);
    previous = lower;
    initial = false;
  }
}

std::string lemmatize(std::string_view word, PosTag pos, const Lexicons& lex) {
  std::string lower = text::fold_case(word);
  if (pos != PosTag::kVerb && pos != PosTag::kNoun) return lower;
  if (auto it = lex.lemma_exceptions.find(lower); it != lex.lemma_exceptions.end()) return it->second;
  const bool ascii_word = std::all_of(lower.begin(), lower.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  if (!ascii_word) return lower;
  if (pos == PosTag::kVerb) return strip_verb(lower);
  // Capitalized nouns are names; "Jones" is not a plural.
  if (text::starts_upper(word)) return lower;
  return strip_plural(lower);
}

int count_syllables(std::string_view word) {
  std::string core;
  for (char c : text::ascii_fold_words(word)) {
    if (c >= 'a' && c <= 'z') core.push_back(c);
  }
  if (core.empty()) return 0;
  auto vowel = [](char c) { return is_vowel(c) || c == 'y'; };
  int groups = 0;
  for (std::size_t i = 0; i < core.size(); ++i) {
    if (vowel(core[i]) && (i == 0 || !vowel(core[i - 1]))) ++groups;
  }
  const std::size_t n = core.size();
  if (groups > 1 && core[n - 1] == 'e' && !vowel(core[n - 2])) {
    const bool consonant_le = n >= 3 && core[n - 2] == 'l' && !vowel(core[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

LinguisticResult annotate_text(AnnotatedBook& book, const Lexicons& lex, const SegmentOptions& options) {
  if (!book.raw_body) {
    throw Error(ErrorCode::kMissingPhase,
                fmt::format("{}: no raw body to annotate (run ingest first)", book.meta.source_id));
  }
  const std::string body = std::move(*book.raw_body);
  book.raw_body.reset();
  book.body.clear();

  SegmentedBody segmented = segment_body(body, lex, options);
  LinguisticResult result{std::move(segmented.warnings)};

  std::int64_t next_index = 0;
  std::optional<std::size_t> lead_end;
  for (const auto& span : segmented.sections) {
    auto tokens = tokenize(std::string_view(body).substr(span.content_begin, span.content_end - span.content_begin),
                           lex, span.content_begin);
    for (auto& t : tokens) t.index = next_index++;
    const std::size_t first_item = tokens.empty() ? span.content_end : static_cast<std::size_t>(tokens.front().offset);

    Section section;
    if (span.header) {
      section.header = *span.header;
      section.header->ws = body.substr(span.content_begin, first_item - span.content_begin);
      if (!lead_end) lead_end = span.content_begin - span.header->raw.size();
    } else if (tokens.empty()) {
      continue;  // whitespace before the first heading lives in the lead
    } else {
      lead_end = first_item;
    }
    section.paragraphs = split_sentences(std::move(tokens));
    for (auto& p : section.paragraphs) {
      for (auto& s : p.sentences) pos_tag(s, lex);
    }
    book.body.push_back(std::move(section));
  }
  book.lead = body.substr(0, lead_end.value_or(body.size()));
  book.meta.add_phase(Phase::kSegment);
  book.meta.add_phase(Phase::kLinguistic);
  return result;
}

void import_external_annotations(AnnotatedBook& book, std::string_view conll) {
  struct Row {
    std::string form, lemma, upos, ner;
    int line;
  };
  std::vector<Row> rows;
  int line_number = 0;
  for (const auto& line : text::split(conll, '\n')) {
    ++line_number;
    if (text::is_blank(line) || line.starts_with('#')) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: expected 4 tab-separated fields, found {}", line_number, fields.size()));
    }
    rows.push_back({fields[0], fields[1], fields[2], fields[3], line_number});
  }

  std::vector<Token*> tokens;
  for_each_token(book, [&](Token& t) { tokens.push_back(&t); });
  const std::size_t common = std::min(rows.size(), tokens.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (rows[i].form != tokens[i]->text) {
      throw Error(ErrorCode::kAlignment,
                  fmt::format("token {} (line {}): file has '{}' but the book has '{}'", i, rows[i].line,
                              rows[i].form, tokens[i]->text));
    }
  }
  if (rows.size() > tokens.size()) {
    throw Error(ErrorCode::kAlignment,
                fmt::format("token {} (line {}): file has extra token '{}'", tokens.size(),
                            rows[tokens.size()].line, rows[tokens.size()].form));
  }
  if (rows.size() < tokens.size()) {
    throw Error(ErrorCode::kAlignment,
                fmt::format("token {}: file ends but the book continues with '{}'", rows.size(),
                            tokens[rows.size()]->text));
  }
  // Validate everything before touching the book.
  std::vector<PosTag> tags;
  tags.reserve(rows.size());
  for (const auto& row : rows) tags.push_back(parse_upos(row.upos, row.line));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Token& t = *tokens[i];
    t.pos = tags[i];
    if (rows[i].lemma != "_") t.lemma = rows[i].lemma;
    t.ner = parse_external_ner(rows[i].ner);
  }
}

}  // namespace novelscope
