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

#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "novelscope/document.hpp"

namespace novelscope {

// Word lists shipped in the data directory. Keys are lowercase.
struct Lexicons {
  std::unordered_set<std::string> abbreviations;  // with trailing '.'
  std::unordered_map<std::string, Gender> honorifics;
  std::unordered_set<std::string> title_honorifics;  // may stand alone as a name
  std::unordered_set<std::string> speech_verbs;
  std::unordered_map<std::string, std::string> lemma_exceptions;
  std::unordered_map<std::string, PosTag> pos;
  std::unordered_map<std::string, HeaderKind> header_keywords;
  std::unordered_map<std::string, int> number_words;
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> dale_chall;
  std::unordered_set<std::string> spache;
  std::unordered_map<std::string, Gender> first_names;

  // Throws Error(kIo) if a file is missing and Error(kParse) on bad lines.
  static Lexicons load(const std::filesystem::path& dir);

  // Loaded once from $NOVELSCOPE_DATA_DIR, else the build-time data directory.
  static const Lexicons& bundled();
  static std::filesystem::path default_dir();

  bool is_honorific(std::string_view token) const;
  Gender honorific_gender(std::string_view token) const;
};

}  // namespace novelscope
