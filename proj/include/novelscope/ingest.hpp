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

// Reading raw books and locating the boilerplate around their bodies.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

enum class SourceKind { kGutenbergText, kHathiPagewise };

// Joins pages in RawBook::text(). A form feed never occurs inside a page
// after reading, so every offset maps back to exactly one (page, offset).
inline constexpr std::string_view kPageSeparator = "\n\f\n";

struct PagePosition {
  std::size_t page = 0;
  std::size_t offset = 0;
};

struct RawBook {
  std::string source_id;
  SourceKind kind = SourceKind::kGutenbergText;
  std::vector<std::string> pages;
  // Keys: title, author, year, subjects, encoding, ebook.
  std::map<std::string, std::string> metadata;
  std::vector<std::string> warnings;

  std::string text() const;
  // Throws Error(kInvalidArgument) for offsets inside a separator or past the end.
  PagePosition locate(std::size_t offset) const;
  std::string corpus() const;
};

struct BoilerplateSpan {
  BlockKind kind = BlockKind::kFrontMatter;
  std::size_t start = 0;  // byte offsets into RawBook::text()
  std::size_t end = 0;
  bool operator==(const BoilerplateSpan&) const = default;
};

struct MatterOptions {
  std::size_t short_line_chars = 25;
  double short_line_ratio = 0.3;
  double front_fraction = 0.05;  // share of the text scanned at each end
  std::size_t title_line_chars = 60;
};

// Throws Error(kUnreadable) or Error(kEmptyInput).
RawBook read_gutenberg(const std::filesystem::path& path);
RawBook read_gutenberg_bytes(std::string source_id, std::string_view bytes);
// Throws Error(kEmptyInput) or Error(kNonNumericPage).
RawBook read_hathi_pagewise(const std::filesystem::path& dir);

// Filename stem made safe for store paths; bare numbers become "pg<n>".
std::string source_id_from_path(const std::filesystem::path& path);

std::vector<BoilerplateSpan> annotate_gutenberg_boilerplate(
    const RawBook& book, std::vector<std::string>* warnings = nullptr);

// Scans [begin, end) of RawBook::text() for front and back matter.
std::vector<BoilerplateSpan> annotate_front_back_matter(
    const RawBook& book, const Lexicons& lexicons, const MatterOptions& options = {},
    std::size_t begin = 0, std::size_t end = std::string::npos);

// Both annotators combined. Spans are sorted and disjoint; body is the rest.
struct TextPartition {
  std::string text;
  std::vector<BoilerplateSpan> spans;
  std::size_t body_begin = 0;
  std::size_t body_end = 0;

  std::string_view body() const {
    return std::string_view(text).substr(body_begin, body_end - body_begin);
  }
};
TextPartition partition_book(const RawBook& book, const Lexicons& lexicons,
                             const MatterOptions& options, std::vector<std::string>* warnings);

// Downloads <mirror_base>/cache/epub/<id>/pg<id>.txt into dest. Skips the
// request when dest already holds a non-empty pg<id>.txt.
// Throws Error(kNotFound) on 404 and Error(kHttp) on other failures.
std::filesystem::path fetch_gutenberg(int id, std::string_view mirror_base,
                                      const std::filesystem::path& dest);

}  // namespace novelscope
