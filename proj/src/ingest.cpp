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

#include "novelscope/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/segmentation.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

namespace fs = std::filesystem;

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadable, fmt::format("cannot read {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kUnreadable, fmt::format("read error on {}", path.string()));
  return buffer.str();
}

// Decoded, newline-normalized text plus the encoding that worked. Control
// characters become spaces: XML 1.0 cannot carry them.
std::pair<std::string, std::string> decode(std::string_view bytes) {
  const bool utf8 = text::is_valid_utf8(bytes);
  auto decoded = text::normalize_newlines(utf8 ? std::string(bytes) : text::latin1_to_utf8(bytes));
  text::blank_controls(decoded);
  return {std::move(decoded), utf8 ? "utf-8" : "latin-1"};
}

// Matches are tested against the start of a line only; long prose lines are
// cut so the regex never scans them in full.
bool line_matches(std::string_view line, const std::regex& pattern) {
  line = text::trim(line);
  if (line.size() > 120) line = line.substr(0, 120);
  return std::regex_search(line.begin(), line.end(), pattern,
                           std::regex_constants::match_continuous);
}

const std::vector<std::regex>& start_markers() {
  static const std::vector<std::regex> patterns = [] {
    const auto flags = std::regex::icase | std::regex::ECMAScript;
    return std::vector<std::regex>{
        std::regex(R"(\*{3}\s*START OF (THE|THIS) PROJECT GUTENBERG)", flags),
        std::regex(R"(\*{3}\s*START OF PROJECT GUTENBERG)", flags),
        std::regex(R"(\*END\*\s*THE SMALL PRINT)", flags),
    };
  }();
  return patterns;
}

const std::vector<std::regex>& end_markers() {
  static const std::vector<std::regex> patterns = [] {
    const auto flags = std::regex::icase | std::regex::ECMAScript;
    return std::vector<std::regex>{
        std::regex(R"(\*{3}\s*END OF (THE|THIS) PROJECT GUTENBERG)", flags),
        std::regex(R"(\*{0,3}\s*END OF (THE |THIS )?PROJECT GUTENBERG)", flags),
    };
  }();
  return patterns;
}

const std::regex& metadata_key_line() {
  static const std::regex pattern(
      R"((Title|Author|Release Date|Posting Date|Language|Character set encoding|Produced by|Translator|Editor|Illustrator):)",
      std::regex::icase);
  return pattern;
}

bool any_match(std::string_view line, const std::vector<std::regex>& patterns) {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const std::regex& p) { return line_matches(line, p); });
}

std::string sanitize_id(std::string_view stem) {
  std::string out;
  for (char c : stem) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out;
}

// "Title: X" / "Author: Y" lines, with indented continuation lines.
void read_header_metadata(std::string_view text, std::map<std::string, std::string>& meta) {
  static const std::regex ebook(R"(\[E(Book|Text) #(\d+)\])", std::regex::icase);
  const auto lines = text::line_spans(text);
  std::string* continuing = nullptr;
  const std::size_t limit = std::min<std::size_t>(lines.size(), 400);
  for (std::size_t i = 0; i < limit; ++i) {
    std::string_view line = text.substr(lines[i].begin, lines[i].end - lines[i].begin);
    if (any_match(line, start_markers())) break;
    if (continuing && !line.empty() && (line[0] == ' ' || line[0] == '\t') && !text::is_blank(line)) {
      *continuing += ' ';
      *continuing += text::trim(line);
      continue;
    }
    continuing = nullptr;
    for (std::string_view key : {"Title", "Author"}) {
      if (line.starts_with(key) && line.size() > key.size() && line[key.size()] == ':') {
        std::string lower = text::fold_case(key);
        auto value = std::string(text::trim(line.substr(key.size() + 1)));
        if (!value.empty() && !meta.contains(lower)) {
          meta[lower] = value;
          continuing = &meta[lower];
        }
      }
    }
    std::match_results<std::string_view::const_iterator> m;
    if (!meta.contains("ebook") && std::regex_search(line.begin(), line.end(), m, ebook)) {
      meta["ebook"] = m[2].str();
    }
  }
}

std::size_t line_end_with_newline(std::string_view text, const text::LineSpan& span) {
  return span.end < text.size() ? span.end + 1 : span.end;
}

// A unit is a page, or for single-page books a run of non-blank lines plus
// the blank lines that follow it.
struct Unit {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<std::string_view> lines;  // non-blank lines
};

std::vector<Unit> split_units(const RawBook& book, std::string_view text, std::size_t begin,
                              std::size_t end) {
  std::vector<Unit> units;
  if (book.pages.size() > 1) {
    std::size_t offset = 0;
    for (const auto& page : book.pages) {
      Unit unit{offset, offset + page.size() + kPageSeparator.size(), {}};
      unit.end = std::min(unit.end, text.size());
      offset = unit.end;
      if (unit.end <= begin || unit.begin >= end) continue;
      unit.begin = std::max(unit.begin, begin);
      unit.end = std::min(unit.end, end);
      std::string_view body = text.substr(unit.begin, unit.end - unit.begin);
      for (const auto& span : text::line_spans(body)) {
        auto line = body.substr(span.begin, span.end - span.begin);
        if (!text::is_blank(line)) unit.lines.push_back(line);
      }
      units.push_back(std::move(unit));
    }
    return units;
  }
  std::string_view region = text.substr(begin, end - begin);
  Unit current;
  bool open = false;
  bool in_blank_tail = false;
  for (const auto& span : text::line_spans(region)) {
    auto line = region.substr(span.begin, span.end - span.begin);
    const bool blank = text::is_blank(line);
    if (!blank && (!open || in_blank_tail)) {
      if (open) {
        current.end = begin + span.begin;
        units.push_back(std::move(current));
        current = Unit{};
      }
      current.begin = begin + span.begin;
      open = true;
      in_blank_tail = false;
    }
    if (!open) continue;  // leading blank lines join no unit
    if (blank) {
      in_blank_tail = true;
    } else {
      current.lines.push_back(line);
    }
  }
  if (open) {
    current.end = end;
    units.push_back(std::move(current));
  }
  return units;
}

enum class UnitClass { kHeading, kTocKeyword, kCopyright, kDisplay, kProse };

const std::regex& toc_keyword() {
  static const std::regex pattern(
      R"(^(table of )?contents\.?:?$|^list of (illustrations|plates)\.?$|^illustrations\.?$)",
      std::regex::icase);
  return pattern;
}

const std::regex& copyright_line() {
  static const std::regex pattern(
      R"(copyright|\(c\)|©|all rights reserved|published by|publishers?\b|printed (by|in)\b)",
      std::regex::icase);
  return pattern;
}

const std::regex& advertisement_line() {
  static const std::regex pattern(
      R"(advertisement|by the same author|uniform with this|now ready|catalogue|crown 8vo|price \d|new novels|works by|list of books|publishers?\b)",
      std::regex::icase);
  return pattern;
}

bool search_line(std::string_view line, const std::regex& pattern) {
  return std::regex_search(line.begin(), line.end(), pattern);
}

UnitClass classify(const Unit& unit, const Lexicons& lex, const MatterOptions& options) {
  if (unit.lines.empty()) return UnitClass::kDisplay;
  if (unit.lines.size() == 1) {
    auto line = text::trim(unit.lines.front());
    if (match_heading(unit.lines.front(), lex)) return UnitClass::kHeading;
    if (search_line(line, toc_keyword())) return UnitClass::kTocKeyword;
  }
  std::size_t short_lines = 0;
  std::size_t letters = 0;
  bool copyright = false;
  for (auto line : unit.lines) {
    auto trimmed = text::trim(line);
    if (text::utf8_length(trimmed) < options.short_line_chars) ++short_lines;
    letters += trimmed.size();
    if (!copyright && search_line(trimmed, copyright_line())) copyright = true;
  }
  if (copyright) return UnitClass::kCopyright;
  const double ratio = static_cast<double>(short_lines) / static_cast<double>(unit.lines.size());
  if (ratio > options.short_line_ratio) return UnitClass::kDisplay;
  // A lone title or subtitle line.
  if (unit.lines.size() == 1 && text::utf8_length(text::trim(unit.lines.front())) <= options.title_line_chars) {
    return UnitClass::kDisplay;
  }
  return UnitClass::kProse;
}

bool is_end_line(std::string_view line) {
  std::string folded = text::fold_case(text::trim(line));
  std::string core;
  for (char c : folded) {
    if (c != '[' && c != ']' && c != '.' && c != '*' && c != '_') core.push_back(c);
  }
  core = std::string(text::trim(core));
  return core == "the end" || core == "finis" || core == "end of the book";
}

}  // namespace

std::string RawBook::text() const {
  std::string out;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (i > 0) out += kPageSeparator;
    out += pages[i];
  }
  return out;
}

PagePosition RawBook::locate(std::size_t offset) const {
  std::size_t base = 0;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (offset < base + pages[i].size() || (offset == base + pages[i].size() && i + 1 == pages.size())) {
      return {i, offset - base};
    }
    base += pages[i].size();
    if (i + 1 < pages.size()) {
      if (offset < base + kPageSeparator.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("offset {} falls inside a page separator", offset));
      }
      base += kPageSeparator.size();
    }
  }
  throw Error(ErrorCode::kInvalidArgument, fmt::format("offset {} is past the end", offset));
}

std::string RawBook::corpus() const {
  return kind == SourceKind::kGutenbergText ? "gutenberg" : "hathitrust";
}

std::string source_id_from_path(const fs::path& path) {
  std::string stem = path.filename().string();
  if (path.has_extension() && !fs::is_directory(path)) stem = path.stem().string();
  if (!stem.empty() && std::all_of(stem.begin(), stem.end(),
                                   [](char c) { return c >= '0' && c <= '9'; })) {
    return "pg" + stem;
  }
  return sanitize_id(stem);
}

RawBook read_gutenberg_bytes(std::string source_id, std::string_view bytes) {
  if (text::trim(bytes).empty()) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("{}: file is empty", source_id));
  }
  auto [decoded, encoding] = decode(bytes);
  if (text::trim(decoded).empty()) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("{}: no text after decoding", source_id));
  }
  RawBook book;
  book.source_id = std::move(source_id);
  book.kind = SourceKind::kGutenbergText;
  book.metadata["encoding"] = encoding;
  read_header_metadata(decoded, book.metadata);
  book.pages.push_back(std::move(decoded));
  return book;
}

RawBook read_gutenberg(const fs::path& path) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kUnreadable, fmt::format("{} is not a readable file", path.string()));
  }
  return read_gutenberg_bytes(source_id_from_path(path), read_bytes(path));
}

RawBook read_hathi_pagewise(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kUnreadable, fmt::format("{} is not a directory", dir.string()));
  }
  std::vector<std::pair<long, fs::path>> pages;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const auto stem = entry.path().stem().string();
    if (entry.path().filename() == "manifest.txt") continue;
    const bool numeric = !stem.empty() && stem.size() <= 9 &&
                         std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!numeric) {
      throw Error(ErrorCode::kNonNumericPage,
                  fmt::format("{}: page file '{}' is not numbered", dir.string(), stem));
    }
    pages.emplace_back(std::stol(stem), entry.path());
  }
  if (pages.empty()) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("{}: no page files", dir.string()));
  }
  std::sort(pages.begin(), pages.end());

  RawBook book;
  book.source_id = source_id_from_path(dir);
  book.kind = SourceKind::kHathiPagewise;
  bool latin1 = false;
  long expected = 1;
  for (const auto& [number, path] : pages) {
    if (number != expected) {
      book.warnings.push_back(number > expected
                                  ? fmt::format("pages {}..{} missing", expected, number - 1)
                                  : fmt::format("page {} repeated", number));
    }
    expected = number + 1;
    auto [page, encoding] = decode(read_bytes(path));
    latin1 = latin1 || encoding == "latin-1";
    book.pages.push_back(std::move(page));
  }
  book.metadata["encoding"] = latin1 ? "latin-1" : "utf-8";
  for (const auto& warning : book.warnings) spdlog::warn("{}: {}", book.source_id, warning);

  if (text::trim(book.text()).empty()) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("{}: pages contain no text", dir.string()));
  }

  const auto manifest = dir / "manifest.txt";
  if (fs::is_regular_file(manifest)) {
    auto [contents, encoding] = decode(read_bytes(manifest));
    for (const auto& line : text::split(contents, '\n')) {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      auto key = text::fold_case(text::trim(std::string_view(line).substr(0, colon)));
      auto value = std::string(text::trim(std::string_view(line).substr(colon + 1)));
      if (!key.empty() && !value.empty()) book.metadata[key] = value;
    }
  }
  return book;
}

std::vector<BoilerplateSpan> annotate_gutenberg_boilerplate(const RawBook& book,
                                                            std::vector<std::string>* warnings) {
  const std::string text = book.text();
  const auto lines = text::line_spans(text);
  auto line_at = [&](std::size_t i) {
    return std::string_view(text).substr(lines[i].begin, lines[i].end - lines[i].begin);
  };

  std::optional<std::size_t> start_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (any_match(line_at(i), start_markers())) {
      start_line = i;
      break;
    }
  }
  std::optional<std::size_t> end_line;
  for (std::size_t i = start_line ? *start_line + 1 : 0; i < lines.size(); ++i) {
    if (any_match(line_at(i), end_markers())) {
      end_line = i;
      break;
    }
  }

  std::vector<BoilerplateSpan> spans;
  if (start_line) {
    spans.push_back({BlockKind::kGutenbergHeader, 0, line_end_with_newline(text, lines[*start_line])});
  } else {
    // No marker: the body starts at the first block after the last
    // "Key: value" line near the top of the file.
    std::optional<std::size_t> last_key;
    const std::size_t scan_limit = std::min<std::size_t>(lines.size(), end_line ? *end_line : 400);
    for (std::size_t i = 0; i < std::min<std::size_t>(scan_limit, 400); ++i) {
      if (line_matches(line_at(i), metadata_key_line())) last_key = i;
    }
    if (last_key) {
      std::size_t i = *last_key + 1;
      while (i < lines.size() && !text::is_blank(line_at(i))) ++i;  // rest of the key block
      while (i < lines.size() && text::is_blank(line_at(i))) ++i;
      const std::size_t body_start = i < lines.size() ? lines[i].begin : text.size();
      if (body_start > 0 && (!end_line || body_start <= lines[*end_line].begin)) {
        spans.push_back({BlockKind::kGutenbergHeader, 0, body_start});
      }
    }
  }
  if (end_line) spans.push_back({BlockKind::kGutenbergFooter, lines[*end_line].begin, text.size()});

  if (!start_line && !end_line) {
    std::string message = fmt::format("{}: no Project Gutenberg markers found", book.source_id);
    spdlog::warn("{}", message);
    if (warnings) warnings->push_back(std::move(message));
  }
  return spans;
}

std::vector<BoilerplateSpan> annotate_front_back_matter(const RawBook& book, const Lexicons& lex,
                                                        const MatterOptions& options,
                                                        std::size_t begin, std::size_t end) {
  const std::string text = book.text();
  end = std::min(end, text.size());
  if (begin >= end) return {};
  const auto units = split_units(book, text, begin, end);
  const double window = options.front_fraction * static_cast<double>(end - begin);

  std::vector<BoilerplateSpan> spans;

  // Front matter: leading units inside the window until a heading or prose.
  std::size_t front_end = begin;
  bool in_toc = false;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const Unit& unit = units[i];
    if (static_cast<double>(unit.end - begin) > window) break;
    const UnitClass cls = classify(unit, lex, options);
    if (cls == UnitClass::kProse) break;
    if (in_toc) {
      // A listing ends where a heading is followed by prose.
      const bool next_prose = i + 1 < units.size() &&
                              classify(units[i + 1], lex, options) == UnitClass::kProse;
      if (next_prose) break;
    } else if (cls == UnitClass::kHeading) {
      break;
    } else if (cls == UnitClass::kTocKeyword) {
      in_toc = true;
    }
    front_end = unit.end;
  }
  if (front_end > begin) spans.push_back({BlockKind::kFrontMatter, begin, front_end});

  // Back matter: text after a closing "THE END" line near the end, else
  // trailing advertisement units.
  std::size_t back_start = end;
  const double tail = static_cast<double>(end) - window;
  const std::string_view region = std::string_view(text).substr(front_end, end - front_end);
  const auto lines = text::line_spans(region);
  for (std::size_t i = lines.size(); i-- > 0;) {
    const std::size_t line_begin = front_end + lines[i].begin;
    if (static_cast<double>(line_begin) < tail) break;
    if (is_end_line(region.substr(lines[i].begin, lines[i].end - lines[i].begin))) {
      const std::size_t after = front_end + line_end_with_newline(region, lines[i]);
      if (!text::is_blank(std::string_view(text).substr(after, end - after))) {
        // Keep the blank lines that follow "THE END" with the body.
        std::size_t first = after;
        while (first < end && (text[first] == '\n' || text[first] == ' ' || text[first] == '\t')) ++first;
        while (first > after && text[first - 1] != '\n') --first;
        back_start = first;
      }
      break;
    }
  }
  if (back_start == end) {
    for (std::size_t i = units.size(); i-- > 0;) {
      const Unit& unit = units[i];
      if (unit.begin < front_end || static_cast<double>(unit.begin) < tail) break;
      const bool advert = std::any_of(unit.lines.begin(), unit.lines.end(), [](std::string_view l) {
        return search_line(l, advertisement_line());
      });
      if (!advert) break;
      back_start = unit.begin;
    }
  }
  if (back_start < end) spans.push_back({BlockKind::kBackMatter, back_start, end});
  return spans;
}

TextPartition partition_book(const RawBook& book, const Lexicons& lex, const MatterOptions& options,
                             std::vector<std::string>* warnings) {
  TextPartition out;
  out.text = book.text();
  out.body_begin = 0;
  out.body_end = out.text.size();
  if (book.kind == SourceKind::kGutenbergText) {
    for (const auto& span : annotate_gutenberg_boilerplate(book, warnings)) {
      if (span.kind == BlockKind::kGutenbergHeader) out.body_begin = span.end;
      if (span.kind == BlockKind::kGutenbergFooter) out.body_end = span.start;
      out.spans.push_back(span);
    }
  }
  for (const auto& span : annotate_front_back_matter(book, lex, options, out.body_begin, out.body_end)) {
    if (span.kind == BlockKind::kFrontMatter) out.body_begin = span.end;
    if (span.kind == BlockKind::kBackMatter) out.body_end = span.start;
    out.spans.push_back(span);
  }
  std::sort(out.spans.begin(), out.spans.end(),
            [](const auto& a, const auto& b) { return a.start < b.start; });
  return out;
}

}  // namespace novelscope
