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

// Phase orchestration over an on-disk store:
//   <out>/<book_id>/{book.xml, book.json, index.html}
//   <out>/_corpus/{manifest.jsonl, dedup.state, vectors.bin, corpus.json, *.html}
// Every phase is incremental. A book is skipped when its stamps are current,
// and unchanged outputs are never rewritten.

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "novelscope/config.hpp"
#include "novelscope/lexicon.hpp"

namespace novelscope {

struct PipelineOptions {
  std::filesystem::path in;   // raw inputs, or the download directory for fetch
  std::filesystem::path out;  // the store
  Config config;
  bool force = false;
};

struct PhaseSummary {
  std::string phase;
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // "<book>: <message>"

  bool ok() const { return failures.empty(); }
};

class Pipeline {
 public:
  // Loads lexicons from config data_dir when set, else the bundled ones.
  explicit Pipeline(PipelineOptions options);
  ~Pipeline();
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  PhaseSummary fetch(const std::vector<int>& ids);
  PhaseSummary ingest();
  PhaseSummary dedup();
  PhaseSummary annotate();
  PhaseSummary analyze();
  PhaseSummary corpus_stats();
  PhaseSummary report();
  // ingest through report; stops early only on a phase-level error.
  std::vector<PhaseSummary> all();

  std::filesystem::path book_dir(std::string_view id) const;
  std::filesystem::path corpus_dir() const;

 private:
  class ProgressLog;

  std::vector<std::string> store_books() const;
  std::vector<std::string> kept_books() const;

  PipelineOptions options_;
  Lexicons owned_lexicons_;
  const Lexicons* lexicons_ = nullptr;
  std::unique_ptr<ProgressLog> progress_;
};

}  // namespace novelscope
