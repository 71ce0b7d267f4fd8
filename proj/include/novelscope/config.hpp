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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace novelscope {

// Flat key=value settings. Every key has a documented default; unknown keys
// are rejected so typos surface early.
class Config {
 public:
  Config();

  // Lines are "key = value"; '#' starts a comment.
  static Config from_file(const std::filesystem::path& path);
  void merge_text(std::string_view text, std::string_view origin);

  // NOVELSCOPE_<KEY> with '.' replaced by '_' and upper-cased.
  void apply_environment();
  static std::string env_name(std::string_view key);

  void set(std::string_view key, std::string_view value);
  const std::string& get(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  double get_double(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return values_; }
  // Stable hash over the given keys, for staleness checks.
  std::string digest_of(std::initializer_list<std::string_view> keys) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace novelscope
