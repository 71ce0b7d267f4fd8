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

#include "novelscope/lexicon.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

namespace fs = std::filesystem;

// Calls fn(fields) for every non-comment, non-empty line.
void for_each_entry(const fs::path& path, std::size_t fields,
                    const std::function<void(const std::vector<std::string>&)>& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open lexicon {}", path.string()));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto parts = text::split(line, '\t');
    if (parts.size() != fields) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: expected {} field(s), got {}",
                                                 path.string(), number, fields, parts.size()));
    }
    fn(parts);
  }
}

std::unordered_set<std::string> load_set(const fs::path& path) {
  std::unordered_set<std::string> out;
  for_each_entry(path, 1, [&](const auto& f) { out.insert(text::fold_case(f[0])); });
  return out;
}

Gender gender_field(const fs::path& path, const std::string& value) {
  auto g = parse_gender(value);
  if (!g) throw Error(ErrorCode::kParse, fmt::format("{}: bad gender '{}'", path.string(), value));
  return *g;
}

}  // namespace

Lexicons Lexicons::load(const fs::path& dir) {
  Lexicons lex;
  lex.abbreviations = load_set(dir / "abbreviations.txt");
  lex.speech_verbs = load_set(dir / "speech_verbs.txt");
  lex.stopwords = load_set(dir / "stopwords.txt");
  lex.dale_chall = load_set(dir / "dale_chall.txt");
  lex.spache = load_set(dir / "spache.txt");

  const auto honorifics = dir / "honorifics.tsv";
  for_each_entry(honorifics, 3, [&](const auto& f) {
    const auto key = text::fold_case(f[0]);
    lex.honorifics[key] = gender_field(honorifics, f[1]);
    if (f[2] == "title") {
      lex.title_honorifics.insert(key);
    } else if (f[2] != "prefix") {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}: bad honorific use '{}'", honorifics.string(), f[2]));
    }
  });
  const auto names = dir / "first_names.tsv";
  for_each_entry(names, 2, [&](const auto& f) {
    lex.first_names[text::fold_case(f[0])] = gender_field(names, f[1]);
  });
  for_each_entry(dir / "lemma_exceptions.tsv", 2,
                 [&](const auto& f) { lex.lemma_exceptions[f[0]] = f[1]; });
  const auto pos = dir / "pos_lexicon.tsv";
  for_each_entry(pos, 2, [&](const auto& f) {
    auto tag = parse_pos(f[1]);
    if (!tag) throw Error(ErrorCode::kParse, fmt::format("{}: bad tag '{}'", pos.string(), f[1]));
    lex.pos.emplace(f[0], *tag);
  });
  const auto headers = dir / "header_patterns.txt";
  for_each_entry(headers, 2, [&](const auto& f) {
    auto kind = parse_header_kind(f[1]);
    if (!kind) {
      throw Error(ErrorCode::kParse, fmt::format("{}: bad kind '{}'", headers.string(), f[1]));
    }
    lex.header_keywords[f[0]] = *kind;
  });
  const auto numbers = dir / "number_words.tsv";
  for_each_entry(numbers, 2, [&](const auto& f) {
    lex.number_words[f[0]] = std::stoi(f[1]);
  });
  return lex;
}

fs::path Lexicons::default_dir() {
  if (const char* env = std::getenv("NOVELSCOPE_DATA_DIR"); env && *env) return env;
  return NOVELSCOPE_DATA_DIR;
}

const Lexicons& Lexicons::bundled() {
  static const Lexicons instance = load(default_dir());
  return instance;
}

bool Lexicons::is_honorific(std::string_view token) const {
  return honorifics.contains(text::fold_case(token));
}

Gender Lexicons::honorific_gender(std::string_view token) const {
  auto it = honorifics.find(text::fold_case(token));
  return it == honorifics.end() ? Gender::kUnknown : it->second;
}

}  // namespace novelscope
