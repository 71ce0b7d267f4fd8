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

#include "novelscope/segmentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>

#include <fmt/format.h>

#include "novelscope/lexicon.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

int roman_value(char c) {
  switch (c) {
    case 'I': return 1;
    case 'V': return 5;
    case 'X': return 10;
    case 'L': return 50;
    case 'C': return 100;
    case 'D': return 500;
    case 'M': return 1000;
    default: return 0;
  }
}

std::string_view strip_terminal(std::string_view s) {
  s = text::trim(s);
  while (!s.empty() && (s.back() == '.' || s.back() == ':')) s.remove_suffix(1);
  return text::trim(s);
}

std::optional<int> parse_arabic(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value < 1 || value > 3999) return std::nullopt;
  return value;
}

std::optional<int> parse_spelled(std::string_view s, const Lexicons& lex) {
  std::string folded = text::fold_case(s);
  std::string_view rest = folded;
  if (rest.starts_with("the ")) rest = text::trim(rest.substr(4));
  if (rest.empty()) return std::nullopt;
  if (auto it = lex.number_words.find(std::string(rest)); it != lex.number_words.end()) {
    return it->second;
  }
  // Compounds: "twenty-three", "twenty three", "thirty-first".
  auto sep = rest.find_first_of("- ");
  if (sep == std::string_view::npos) return std::nullopt;
  auto tens = lex.number_words.find(std::string(rest.substr(0, sep)));
  auto ones = lex.number_words.find(std::string(text::trim(rest.substr(sep + 1))));
  if (tens == lex.number_words.end() || ones == lex.number_words.end()) return std::nullopt;
  if (tens->second < 20 || tens->second > 90 || tens->second % 10 != 0) return std::nullopt;
  if (ones->second < 1 || ones->second > 9) return std::nullopt;
  return tens->second + ones->second;
}

bool is_blank_line(std::string_view line) { return text::is_blank(line); }

// Position of the first title separator after a heading number, or npos.
std::size_t find_terminator(std::string_view rest) {
  for (std::size_t i = 0; i < rest.size(); ++i) {
    char c = rest[i];
    if (c == '.' || c == ':') return i;
    if (c == '-' && i + 1 < rest.size() && rest[i + 1] == '-') return i;
    if (rest.substr(i).starts_with("—") || rest.substr(i).starts_with("–")) return i;
  }
  return std::string_view::npos;
}

}  // namespace

std::optional<int> parse_roman(std::string_view s) {
  if (s.empty() || s.size() > 15) return std::nullopt;
  int total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int v = roman_value(s[i]);
    if (v == 0) return std::nullopt;
    int next = i + 1 < s.size() ? roman_value(s[i + 1]) : 0;
    total += v < next ? -v : v;
  }
  if (total < 1 || total > 3999) return std::nullopt;
  // Strict form: re-encoding the value must give the same numeral.
  static constexpr std::pair<int, std::string_view> kParts[] = {
      {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"}, {90, "XC"}, {50, "L"},
      {40, "XL"},  {10, "X"},   {9, "IX"},  {5, "V"},    {4, "IV"},  {1, "I"}};
  std::string canonical;
  int rest = total;
  for (const auto& [value, numeral] : kParts) {
    while (rest >= value) {
      canonical += numeral;
      rest -= value;
    }
  }
  if (canonical != s) return std::nullopt;
  return total;
}

std::optional<int> parse_header_number(std::string_view raw, const Lexicons& lex) {
  std::string_view s = strip_terminal(raw);
  if (s.empty()) return std::nullopt;
  if (auto n = parse_arabic(s)) return n;
  std::string upper;
  for (char c : s) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (auto n = parse_roman(upper)) return n;
  return parse_spelled(s, lex);
}

std::optional<HeadingCandidate> match_heading(std::string_view line, const Lexicons& lex,
                                              const SegmentOptions& options) {
  std::string_view trimmed = text::trim(line);
  if (trimmed.empty()) return std::nullopt;
  const std::size_t length = text::utf8_length(line);

  HeadingCandidate candidate;
  candidate.header.raw = std::string(line);

  auto space = trimmed.find_first_of(" \t");
  if (space != std::string_view::npos) {
    auto keyword = lex.header_keywords.find(text::fold_case(trimmed.substr(0, space)));
    if (keyword != lex.header_keywords.end()) {
      std::string_view rest = text::trim(trimmed.substr(space));
      auto stop = find_terminator(rest);
      std::string_view number_text = rest.substr(0, stop);
      candidate.keyword = true;
      candidate.header.kind = keyword->second;
      if (auto n = parse_header_number(number_text, lex); n && length <= options.max_keyword_heading_chars) {
        candidate.header.number = n;
        return candidate;
      }
      // "CHAPTER THE LAST": a short keyword line without a usable number.
      if (length <= options.max_heading_chars && stop == std::string_view::npos &&
          text::is_all_upper(trimmed)) {
        return candidate;
      }
      return std::nullopt;
    }
  }

  if (length > options.max_heading_chars) return std::nullopt;
  std::string_view bare = strip_terminal(trimmed);
  std::optional<int> n = parse_arabic(bare);
  if (!n && text::is_all_upper(bare)) n = parse_roman(bare);
  if (!n) n = parse_spelled(bare, lex);
  if (!n) return std::nullopt;
  candidate.header.kind = HeaderKind::kOther;
  candidate.header.number = n;
  return candidate;
}

std::vector<HeadingCandidate> detect_headers(const std::vector<std::string_view>& lines,
                                             const Lexicons& lex, const SegmentOptions& options) {
  std::vector<HeadingCandidate> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto candidate = match_heading(lines[i], lex, options);
    if (!candidate) continue;
    const bool numbered_keyword = candidate->keyword && candidate->header.number;
    if (!numbered_keyword) {
      const bool before = i == 0 || is_blank_line(lines[i - 1]);
      const bool after = i + 1 == lines.size() || is_blank_line(lines[i + 1]);
      if (!before || !after) continue;
    }
    candidate->line = i;
    out.push_back(std::move(*candidate));
  }
  return out;
}

NumberingResult enforce_numbering_consistency(const std::vector<HeadingCandidate>& candidates) {
  NumberingResult result;
  std::map<HeaderKind, std::vector<std::size_t>> families;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].header.number) families[candidates[i].header.kind].push_back(i);
  }

  std::vector<bool> keep(candidates.size(), false);
  for (const auto& [kind, members] : families) {
    const std::size_t n = members.size();
    struct Chain {
      int length = 0;  // 0 = no chain ends here
      std::size_t start = 0;
      std::size_t previous = SIZE_MAX;
    };
    std::vector<Chain> best(n);
    auto number = [&](std::size_t k) { return *candidates[members[k]].header.number; };
    auto line = [&](std::size_t k) { return candidates[members[k]].line; };
    for (std::size_t i = 0; i < n; ++i) {
      if (number(i) == 1) best[i] = {1, line(i), SIZE_MAX};
      for (std::size_t j = 0; j < i; ++j) {
        const int step = number(i) - number(j);
        if (best[j].length == 0 || (step != 1 && step != 2)) continue;
        Chain c{best[j].length + 1, best[j].start, j};
        if (c.length > best[i].length ||
            (c.length == best[i].length && c.start < best[i].start)) {
          best[i] = c;
        }
      }
    }
    std::size_t end = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (best[i].length == 0) continue;
      if (end == SIZE_MAX || best[i].length > best[end].length ||
          (best[i].length == best[end].length && best[i].start < best[end].start)) {
        end = i;
      }
    }
    for (std::size_t k = end; k != SIZE_MAX; k = best[k].previous) {
      keep[members[k]] = true;
      const std::size_t prev = best[k].previous;
      if (prev != SIZE_MAX && number(k) - number(prev) == 2) {
        result.warnings.push_back(fmt::format("{} {} missing before line {}",
                                              header_kind_name(kind), number(k) - 1, line(k) + 1));
      }
    }
  }

  std::size_t first = SIZE_MAX;
  std::size_t last = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!keep[i]) continue;
    first = std::min(first, candidates[i].line);
    last = std::max(last, candidates[i].line);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (keep[i]) {
      result.accepted.push_back(c);
    } else if (!c.header.number && first != SIZE_MAX && c.line > first && c.line < last) {
      HeadingCandidate other = c;
      other.header.kind = HeaderKind::kOther;
      result.accepted.push_back(std::move(other));
    }
  }
  std::sort(result.accepted.begin(), result.accepted.end(),
            [](const auto& a, const auto& b) { return a.line < b.line; });
  std::reverse(result.warnings.begin(), result.warnings.end());
  return result;
}

SegmentedBody segment_body(std::string_view body, const Lexicons& lex,
                           const SegmentOptions& options) {
  const auto spans = text::line_spans(body);
  std::vector<std::string_view> lines;
  lines.reserve(spans.size());
  for (const auto& span : spans) lines.push_back(body.substr(span.begin, span.end - span.begin));

  auto numbering = enforce_numbering_consistency(detect_headers(lines, lex, options));
  SegmentedBody out;
  out.warnings = std::move(numbering.warnings);

  const auto& accepted = numbering.accepted;
  SectionSpan lead;
  lead.content_begin = 0;
  lead.content_end = accepted.empty() ? body.size() : spans[accepted.front().line].begin;
  out.sections.push_back(lead);
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    const auto& span = spans[accepted[k].line];
    SectionSpan section;
    section.header = accepted[k].header;
    section.content_begin = span.end;
    section.content_end = k + 1 < accepted.size() ? spans[accepted[k + 1].line].begin : body.size();
    out.sections.push_back(std::move(section));
  }
  return out;
}

}  // namespace novelscope
