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

#include "novelscope/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

// Keep in sync with docs/config.md.
constexpr std::pair<std::string_view, std::string_view> kDefaults[] = {
    {"mirror_base", "https://www.gutenberg.org"},
    {"data_dir", ""},
    {"seed", "42"},
    {"jobs", "1"},
    {"progress_log", ""},
    {"ingest.short_line_chars", "25"},
    {"ingest.short_line_ratio", "0.3"},
    {"ingest.front_fraction", "0.05"},
    {"dedup.shingle_words", "5"},
    {"dedup.num_hashes", "128"},
    {"dedup.threshold", "0.8"},
    {"dedup.title_author_match", "true"},
    {"segment.max_heading_chars", "60"},
    {"segment.max_keyword_heading_chars", "100"},
    {"characters.min_mentions", "3"},
    {"characters.pronoun_window", "2"},
    {"network.window", "30"},
    {"network.min_co", "5"},
    {"timeline.top_k", "10"},
    {"embed.dim", "100"},
    {"embed.window", "5"},
    {"embed.epochs", "10"},
    {"embed.vocab_max", "200000"},
    {"embed.min_count", "100"},
    {"embed.negative", "5"},
    {"embed.learning_rate", "0.025"},
    {"embed.train_words", "true"},
    {"similar.k", "10"},
    {"vocab.top_common", "10000"},
    {"vocab.list_len", "25"},
    {"corpus.ranks", "9"},
    {"corpus.outlier_threshold", "10"},
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("config key '{}': '{}' is not {}", key, value, want));
}

}  // namespace

Config::Config() {
  for (const auto& [key, value] : kDefaults) values_.emplace(key, value);
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read config {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  Config config;
  config.merge_text(buffer.str(), path.string());
  return config;
}

void Config::merge_text(std::string_view contents, std::string_view origin) {
  int number = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++number;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse, fmt::format("{}:{}: expected key = value", origin, number));
    }
    set(text::trim(line.substr(0, eq)), text::trim(line.substr(eq + 1)));
  }
}

std::string Config::env_name(std::string_view key) {
  std::string name = "NOVELSCOPE_";
  for (char c : key) {
    name.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return name;
}

void Config::apply_environment() {
  for (auto& [key, value] : values_) {
    if (const char* env = std::getenv(env_name(key).c_str()); env != nullptr) value = env;
  }
}

void Config::set(std::string_view key, std::string_view value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown config key '{}'", key));
  }
  it->second = std::string(value);
}

const std::string& Config::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown config key '{}'", key));
  }
  return it->second;
}

std::int64_t Config::get_int(std::string_view key) const {
  const auto& value = get(key);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

double Config::get_double(std::string_view key) const {
  const auto& value = get(key);
  char* end = nullptr;
  double out = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) bad_value(key, value, "a number");
  return out;
}

bool Config::get_bool(std::string_view key) const {
  const auto value = text::fold_case(get(key));
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value, "a boolean");
}

std::string Config::digest_of(std::initializer_list<std::string_view> keys) const {
  std::string joined;
  for (auto key : keys) {
    joined += key;
    joined += '=';
    joined += get(key);
    joined += '\n';
  }
  return fmt::format("{:016x}", text::fnv1a64(joined));
}

}  // namespace novelscope
