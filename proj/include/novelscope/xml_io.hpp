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

// Canonical XML form of AnnotatedBook. The element layout is documented in
// docs/xml-format.md.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "novelscope/document.hpp"

namespace novelscope {

// Deterministic: fixed attribute order, two-space indent, UTF-8.
// Throws Error(kInvariant) if the book violates check_invariants.
std::string serialize(const AnnotatedBook& book);

// Throws Error(kParse) with a line number for malformed or unknown markup,
// and Error(kInvariant) when the parsed book is inconsistent.
AnnotatedBook parse(std::string_view xml);

AnnotatedBook read_book(const std::filesystem::path& path);

// Parses only the <meta> element, for cheap staleness checks.
BookMeta read_book_meta(const std::filesystem::path& path);

}  // namespace novelscope
