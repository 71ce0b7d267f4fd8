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

// Section heading detection with numbering consistency.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

struct SegmentOptions {
  // Bare numbers and spelled numbers must be this short and blank-isolated.
  std::size_t max_heading_chars = 60;
  // "Chapter 12. A long title" lines only need to fit this limit.
  std::size_t max_keyword_heading_chars = 100;
};

struct HeadingCandidate {
  std::size_t line = 0;
  Header header;         // raw is the full line; ws is left empty
  bool keyword = false;  // introduced by a section keyword
  bool operator==(const HeadingCandidate&) const = default;
};

std::optional<int> parse_roman(std::string_view text);
// Arabic 1..3999, strict roman numerals, spelled cardinals and ordinals up
// to 100 ("twenty-third", "the first"). Trailing '.' or ':' is ignored.
std::optional<int> parse_header_number(std::string_view text, const Lexicons& lexicons);

// Pattern test for one line, ignoring its neighbours.
std::optional<HeadingCandidate> match_heading(std::string_view line, const Lexicons& lexicons,
                                              const SegmentOptions& options = {});

std::vector<HeadingCandidate> detect_headers(const std::vector<std::string_view>& lines,
                                             const Lexicons& lexicons,
                                             const SegmentOptions& options = {});

struct NumberingResult {
  std::vector<HeadingCandidate> accepted;
  std::vector<std::string> warnings;
};

// Per heading kind keeps the longest run numbered from 1 (one missing number
// at a time is tolerated); earlier runs win ties. Unnumbered candidates that
// fall between accepted headings are kept with kind other.
NumberingResult enforce_numbering_consistency(const std::vector<HeadingCandidate>& candidates);

// Body text split at accepted headings.
struct SectionSpan {
  std::optional<Header> header;  // ws left empty
  std::size_t content_begin = 0;  // byte offsets into the body
  std::size_t content_end = 0;
};

struct SegmentedBody {
  std::vector<SectionSpan> sections;  // the first never has a header
  std::vector<std::string> warnings;
};

SegmentedBody segment_body(std::string_view body, const Lexicons& lexicons,
                           const SegmentOptions& options = {});

}  // namespace novelscope
