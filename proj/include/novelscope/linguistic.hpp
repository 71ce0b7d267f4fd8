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

// Rule-based tokenization, sentence splitting, tagging and lemmatization.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "novelscope/document.hpp"
#include "novelscope/segmentation.hpp"

namespace novelscope {

struct Lexicons;

// Splits on whitespace, then detaches punctuation. Abbreviations, initials,
// decimals, hyphenated words and contractions stay whole; "'s" after a name
// is its own token. Offsets are `base_offset` plus the byte position in
// `text`; each token's ws runs to the next token or to the end of `text`.
// Indices count from 0.
std::vector<Token> tokenize(std::string_view text, const Lexicons& lexicons,
                            std::size_t base_offset = 0);

// Groups tokens into paragraphs (ws with two or more newlines) and sentences.
// A sentence ends after a run of '.', '!', '?' or ellipsis tokens plus any
// closing quotes or brackets, unless the next word starts in lowercase.
std::vector<Paragraph> split_sentences(std::vector<Token> tokens);

// True for tokens made only of sentence-final punctuation.
bool is_terminator(std::string_view token);

// Every token gets a tag; punctuation and the possessive "'s" get no lemma.
void pos_tag(Sentence& sentence, const Lexicons& lexicons);

// Exception table, then suffix rules for verbs and nouns; other tags get the
// case-folded word.
std::string lemmatize(std::string_view word, PosTag pos, const Lexicons& lexicons);

// Vowel groups in the alphabetic core, less a silent final 'e'; at least 1
// unless the core is empty.
int count_syllables(std::string_view word);

struct LinguisticResult {
  std::vector<std::string> warnings;
};

// Replaces book.raw_body with segmented, tokenized, tagged sections and
// stamps the segment and linguistic phases. body_text(book) is unchanged.
// Throws Error(kMissingPhase) when there is no raw body.
LinguisticResult annotate_text(AnnotatedBook& book, const Lexicons& lexicons,
                               const SegmentOptions& options = {});

// Overwrites pos, lemma and ner from a tab-separated FORM, LEMMA, UPOS, NER
// file aligned token by token. Throws Error(kAlignment) at the first
// divergence and Error(kParse) on malformed lines.
void import_external_annotations(AnnotatedBook& book, std::string_view conll);

}  // namespace novelscope
