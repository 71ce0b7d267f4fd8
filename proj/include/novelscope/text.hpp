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

// Small UTF-8 and string helpers shared by the text-processing modules.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace novelscope::text {

// Decodes one code point starting at pos and advances pos. Invalid bytes
// decode as U+FFFD and advance by one.
char32_t decode_utf8(std::string_view s, std::size_t& pos);
void append_utf8(std::string& out, char32_t cp);

bool is_valid_utf8(std::string_view s);
std::string latin1_to_utf8(std::string_view s);

// Drops a leading byte-order mark and converts CRLF / lone CR to LF.
std::string normalize_newlines(std::string_view s);

// Replaces control bytes other than tab and newline, and DEL, with spaces.
// Returns the number replaced. Lengths and offsets are preserved.
std::size_t blank_controls(std::string& s);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_upper(char32_t cp);
bool is_space(char32_t cp);
// Quotation marks, dashes, brackets and the rest of ASCII punctuation.
bool is_punct(char32_t cp);

bool has_letter(std::string_view s);
bool has_alnum(std::string_view s);
bool starts_upper(std::string_view s);
bool is_all_upper(std::string_view s);

// Lowercases ASCII and Latin-1 letters; leaves other code points alone.
std::string fold_case(std::string_view s);
// Lowercase ASCII letters only, diacritics removed, everything else dropped
// except single spaces between words.
std::string ascii_fold_words(std::string_view s);

std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);
std::size_t utf8_length(std::string_view s);

struct LineSpan {
  std::size_t begin = 0;  // first byte of the line
  std::size_t end = 0;    // one past the last byte, excluding '\n'
};
std::vector<LineSpan> line_spans(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

// Fixed-point rendering with trailing zeros kept ("1.500").
std::string fixed(double value, int decimals);

}  // namespace novelscope::text
