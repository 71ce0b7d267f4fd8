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

// Direct speech spans and their speakers.

#pragma once

#include <string>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

struct Lexicons;

// Pairs double quotation marks within each paragraph and records the spans
// in book.quotes and on each covered token. A paragraph that opens with a
// quotation mark while a quote is pending continues that quote; otherwise an
// unclosed quote ends with its paragraph and a warning is returned. Books
// without any double quotation marks are paired on single marks instead.
std::vector<std::string> extract_quotes(AnnotatedBook& book);

// Speaker: the character mention outside quotes, in the quote's sentences or
// the adjacent ones, preferring mentions within two tokens of a speech verb,
// then mentions in the quote's own sentences, then the nearest. Addressee: the nearest other such mention.
// Requires token character labels.
void attribute_quotes(AnnotatedBook& book, const Lexicons& lexicons);

}  // namespace novelscope
