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

#include "novelscope/cli.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "novelscope/config.hpp"
#include "novelscope/error.hpp"
#include "novelscope/pipeline.hpp"

namespace novelscope {
namespace {

void use_stderr_logger(bool verbose) {
  auto logger = spdlog::get("novelscope");
  if (!logger) logger = spdlog::stderr_color_mt("novelscope");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Annotate novels and build per-book and corpus reports."};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::filesystem::path in;
  std::filesystem::path out;
  std::optional<std::filesystem::path> config_path;
  bool force = false;
  bool verbose = false;
  std::optional<int> jobs;
  std::optional<std::int64_t> seed;
  app.add_option("--in", in, "Raw input directory (fetch downloads here)");
  app.add_option("--out", out, "Store directory");
  app.add_option("--config", config_path, "Key = value configuration file")->check(CLI::ExistingFile);
  app.add_flag("--force", force, "Redo work even when stamps are current");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Base random seed");
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  std::vector<int> ids;
  auto* fetch = app.add_subcommand("fetch", "Download Project Gutenberg texts into --in");
  fetch->add_option("ids", ids, "Gutenberg ebook numbers")->required()->check(CLI::PositiveNumber);
  const std::vector<std::pair<std::string, std::string>> phases = {
      {"ingest", "Clean raw texts into store XML"},
      {"dedup", "Fingerprint books and write the corpus manifest"},
      {"annotate", "Segment, tokenize, tag and find characters"},
      {"analyze", "Compute per-book analytics"},
      {"corpus-stats", "Compute corpus-level statistics"},
      {"report", "Write HTML reports"},
      {"all", "Run every phase from ingest to report"},
  };
  for (const auto& [name, help] : phases) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }
  use_stderr_logger(verbose);

  try {
    PipelineOptions options;
    options.in = in;
    options.out = out;
    options.force = force;
    if (config_path) options.config = Config::from_file(*config_path);
    options.config.apply_environment();
    if (jobs) options.config.set("jobs", std::to_string(*jobs));
    if (seed) options.config.set("seed", std::to_string(*seed));

    const std::string command = app.get_subcommands().front()->get_name();
    if (command != "fetch" && out.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no store directory given (--out)");
    }
    Pipeline pipeline(std::move(options));
    std::vector<PhaseSummary> summaries;
    if (command == "fetch") summaries.push_back(pipeline.fetch(ids));
    else if (command == "ingest") summaries.push_back(pipeline.ingest());
    else if (command == "dedup") summaries.push_back(pipeline.dedup());
    else if (command == "annotate") summaries.push_back(pipeline.annotate());
    else if (command == "analyze") summaries.push_back(pipeline.analyze());
    else if (command == "corpus-stats") summaries.push_back(pipeline.corpus_stats());
    else if (command == "report") summaries.push_back(pipeline.report());
    else summaries = pipeline.all();

    bool ok = true;
    for (const auto& s : summaries) ok = ok && s.ok();
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
}

}  // namespace novelscope
