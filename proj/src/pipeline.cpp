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

#include "novelscope/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "novelscope/analytics_book.hpp"
#include "novelscope/analytics_corpus.hpp"
#include "novelscope/characters.hpp"
#include "novelscope/dedup.hpp"
#include "novelscope/embedding.hpp"
#include "novelscope/error.hpp"
#include "novelscope/files.hpp"
#include "novelscope/ingest.hpp"
#include "novelscope/linguistic.hpp"
#include "novelscope/report.hpp"
#include "novelscope/segmentation.hpp"
#include "novelscope/text.hpp"
#include "novelscope/xml_io.hpp"

namespace novelscope {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::string_view kCorpusDir = "_corpus";
constexpr std::string_view kBookXml = "book.xml";
constexpr std::string_view kBookJson = "book.json";
constexpr std::string_view kManifest = "manifest.jsonl";
constexpr std::string_view kDedupState = "dedup.state";
constexpr std::string_view kVectors = "vectors.bin";
constexpr std::string_view kCorpusJson = "corpus.json";

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

// Runs fn(i) for every i in [0, n) on up to `jobs` threads. fn must not throw.
void parallel_for(std::size_t n, std::int64_t jobs, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp<std::int64_t>(jobs, 1, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

MatterOptions matter_options(const Config& c) {
  MatterOptions o;
  o.short_line_chars = static_cast<std::size_t>(c.get_int("ingest.short_line_chars"));
  o.short_line_ratio = c.get_double("ingest.short_line_ratio");
  o.front_fraction = c.get_double("ingest.front_fraction");
  return o;
}

SegmentOptions segment_options(const Config& c) {
  SegmentOptions o;
  o.max_heading_chars = static_cast<std::size_t>(c.get_int("segment.max_heading_chars"));
  o.max_keyword_heading_chars = static_cast<std::size_t>(c.get_int("segment.max_keyword_heading_chars"));
  return o;
}

CharacterOptions character_options(const Config& c) {
  CharacterOptions o;
  o.min_mentions = static_cast<int>(c.get_int("characters.min_mentions"));
  o.pronoun_window = static_cast<int>(c.get_int("characters.pronoun_window"));
  return o;
}

FingerprintOptions fingerprint_options(const Config& c) {
  FingerprintOptions o;
  o.shingle_words = static_cast<std::size_t>(c.get_int("dedup.shingle_words"));
  o.num_hashes = static_cast<std::size_t>(c.get_int("dedup.num_hashes"));
  o.seed = text::splitmix64(o.seed ^ static_cast<std::uint64_t>(c.get_int("seed")));
  return o;
}

DedupOptions dedup_options(const Config& c) {
  return {c.get_bool("dedup.title_author_match"), c.get_double("dedup.threshold")};
}

EmbeddingOptions embedding_options(const Config& c) {
  EmbeddingOptions o;
  o.dim = static_cast<int>(c.get_int("embed.dim"));
  o.window = static_cast<int>(c.get_int("embed.window"));
  o.epochs = static_cast<int>(c.get_int("embed.epochs"));
  o.vocab_max = static_cast<std::size_t>(c.get_int("embed.vocab_max"));
  o.min_count = c.get_int("embed.min_count");
  o.negative = static_cast<int>(c.get_int("embed.negative"));
  o.learning_rate = c.get_double("embed.learning_rate");
  o.train_words = c.get_bool("embed.train_words");
  o.seed = static_cast<std::uint64_t>(c.get_int("seed"));
  return o;
}

std::string analysis_digest(const Config& c) {
  return c.digest_of({"seed", "timeline.top_k", "network.window", "network.min_co", "embed.dim", "embed.window",
                      "embed.epochs", "embed.vocab_max", "embed.min_count", "embed.negative", "embed.learning_rate",
                      "embed.train_words", "similar.k", "vocab.top_common", "vocab.list_len"});
}

struct InputItem {
  fs::path path;
  bool directory = false;
  std::string id;
};

std::vector<InputItem> list_inputs(const fs::path& in) {
  if (in.empty()) throw Error(ErrorCode::kInvalidArgument, "no input directory given (--in)");
  if (fs::is_regular_file(in)) return {{in, false, source_id_from_path(in)}};
  if (!fs::is_directory(in)) throw Error(ErrorCode::kIo, fmt::format("input {} does not exist", in.string()));
  std::vector<InputItem> out;
  for (const auto& entry : fs::directory_iterator(in)) {
    if (entry.is_directory()) {
      out.push_back({entry.path(), true, source_id_from_path(entry.path())});
    } else if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      out.push_back({entry.path(), false, source_id_from_path(entry.path())});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

// "key: value" lines, as in the pagewise manifest.
void apply_sidecar(const fs::path& path, std::map<std::string, std::string>& metadata) {
  if (!fs::is_regular_file(path)) return;
  for (const auto& line : text::split(read_file(path), '\n')) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    auto key = text::fold_case(text::trim(std::string_view(line).substr(0, colon)));
    auto value = std::string(text::trim(std::string_view(line).substr(colon + 1)));
    if (!key.empty() && !value.empty()) metadata[key] = value;
  }
}

std::optional<int> parse_year(std::string_view s) {
  s = text::trim(s);
  int year = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
  if (ec != std::errc() || ptr == s.data()) return std::nullopt;
  return year;
}

std::vector<std::string> parse_subjects(const std::map<std::string, std::string>& metadata) {
  std::vector<std::string> out;
  for (const char* key : {"subjects", "subject"}) {
    auto it = metadata.find(key);
    if (it == metadata.end()) continue;
    for (const auto& part : text::split(it->second, ';')) {
      auto s = std::string(text::trim(part));
      if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
  }
  return out;
}

std::string metadata_value(const std::map<std::string, std::string>& metadata, const char* key) {
  auto it = metadata.find(key);
  return it == metadata.end() ? std::string() : it->second;
}

// Collects per-book outcomes from worker threads.
class Tally {
 public:
  explicit Tally(std::string phase) { summary_.phase = std::move(phase); }

  void processed() {
    std::lock_guard lock(mutex_);
    ++summary_.processed;
  }
  void skipped() {
    std::lock_guard lock(mutex_);
    ++summary_.skipped;
  }
  void failed(std::string_view book, std::string_view message) {
    spdlog::error("{} {}: {}", summary_.phase, book, message);
    std::lock_guard lock(mutex_);
    summary_.failures.push_back(fmt::format("{}: {}", book, message));
  }
  bool has_failures() {
    std::lock_guard lock(mutex_);
    return !summary_.failures.empty();
  }
  PhaseSummary finish() {
    std::sort(summary_.failures.begin(), summary_.failures.end());
    spdlog::info("{}: {} processed, {} skipped, {} failed", summary_.phase, summary_.processed, summary_.skipped,
                 summary_.failures.size());
    return summary_;
  }

 private:
  std::mutex mutex_;
  PhaseSummary summary_;
};

enum class Outcome { kProcessed, kSkipped };

std::string missing_stamp(Phase phase, std::string_view command) {
  return fmt::format("missing phase stamp '{}'; run '{}' first", phase_name(phase), command);
}

}  // namespace

class Pipeline::ProgressLog {
 public:
  explicit ProgressLog(fs::path path) : path_(std::move(path)) {}

  void record(std::string_view phase, std::string_view book, bool ok, double seconds, std::string_view error) {
    if (path_.empty()) return;
    nlohmann::json j = {{"phase", phase}, {"book", book}, {"status", ok ? "ok" : "failed"}, {"seconds", seconds}};
    if (!ok) j["error"] = error;
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    out << j.dump() << '\n';
    if (!out) spdlog::warn("cannot append to progress log {}", path_.string());
  }

 private:
  fs::path path_;
  std::mutex mutex_;
};

namespace {

// Runs `work` for every book on the pool, recording outcomes and progress.
template <typename Log>
void run_books(const std::vector<std::string>& ids, std::int64_t jobs, Tally& tally, Log& log,
               std::string_view phase, const std::function<Outcome(const std::string&)>& work) {
  parallel_for(ids.size(), jobs, [&](std::size_t i) {
    const auto start = Clock::now();
    auto seconds = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
    try {
      if (work(ids[i]) == Outcome::kSkipped) {
        tally.skipped();
        return;
      }
      tally.processed();
      log.record(phase, ids[i], true, seconds(), "");
    } catch (const std::exception& e) {
      tally.failed(ids[i], e.what());
      log.record(phase, ids[i], false, seconds(), e.what());
    }
  });
}

}  // namespace

Pipeline::Pipeline(PipelineOptions options) : options_(std::move(options)) {
  const auto& data_dir = options_.config.get("data_dir");
  if (data_dir.empty()) {
    lexicons_ = &Lexicons::bundled();
  } else {
    owned_lexicons_ = Lexicons::load(data_dir);
    lexicons_ = &owned_lexicons_;
  }
  progress_ = std::make_unique<ProgressLog>(options_.config.get("progress_log"));
}

Pipeline::~Pipeline() = default;

fs::path Pipeline::book_dir(std::string_view id) const { return options_.out / fs::path(std::string(id)); }
fs::path Pipeline::corpus_dir() const { return options_.out / kCorpusDir; }

std::vector<std::string> Pipeline::store_books() const {
  std::vector<std::string> out;
  if (!fs::is_directory(options_.out)) return out;
  for (const auto& entry : fs::directory_iterator(options_.out)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && !name.starts_with('_') && fs::is_regular_file(entry.path() / kBookXml)) {
      out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Pipeline::kept_books() const {
  const auto manifest = corpus_dir() / kManifest;
  if (!fs::is_regular_file(manifest)) {
    throw Error(ErrorCode::kMissingPhase, fmt::format("no corpus manifest at {}; run 'dedup' first", manifest.string()));
  }
  const auto index = parse_jsonl(read_file(manifest));
  const auto stored = store_books();
  std::vector<std::string> out;
  for (const auto& id : index.kept_ids()) {
    if (std::binary_search(stored.begin(), stored.end(), id)) out.push_back(id);
  }
  return out;
}

PhaseSummary Pipeline::fetch(const std::vector<int>& ids) {
  Tally tally("fetch");
  std::vector<std::string> names;
  for (int id : ids) names.push_back(std::to_string(id));
  const auto dest = options_.in;
  if (dest.empty()) throw Error(ErrorCode::kInvalidArgument, "no download directory given (--in)");
  fs::create_directories(dest);
  run_books(names, 1, tally, *progress_, "fetch", [&](const std::string& name) {
    const auto target = dest / fmt::format("pg{}.txt", name);
    if (!options_.force && fs::is_regular_file(target) && fs::file_size(target) > 0) return Outcome::kSkipped;
    if (options_.force) fs::remove(target);
    fetch_gutenberg(std::stoi(name), options_.config.get("mirror_base"), dest);
    return Outcome::kProcessed;
  });
  return tally.finish();
}

PhaseSummary Pipeline::ingest() {
  Tally tally("ingest");
  const auto inputs = list_inputs(options_.in);
  std::map<std::string, const InputItem*> by_id;
  std::vector<std::string> ids;
  for (const auto& item : inputs) {
    if (!by_id.emplace(item.id, &item).second) {
      tally.failed(item.id, fmt::format("{} maps to the same id as another input", item.path.string()));
      continue;
    }
    ids.push_back(item.id);
  }
  const auto config_digest =
      options_.config.digest_of({"ingest.short_line_chars", "ingest.short_line_ratio", "ingest.front_fraction"});
  const auto matter = matter_options(options_.config);

  run_books(ids, options_.config.get_int("jobs"), tally, *progress_, "ingest", [&](const std::string& id) {
    const InputItem& item = *by_id.at(id);
    RawBook raw = item.directory ? read_hathi_pagewise(item.path) : read_gutenberg(item.path);
    if (!item.directory) apply_sidecar(fs::path(item.path).replace_extension(".meta"), raw.metadata);

    std::string fingerprint = raw.text();
    for (const auto& [key, value] : raw.metadata) fingerprint += fmt::format("\n{}={}", key, value);
    fingerprint += "\n" + config_digest;
    const auto digest = hex64(text::fnv1a64(fingerprint));

    const auto xml_path = book_dir(id) / kBookXml;
    if (!options_.force && fs::is_regular_file(xml_path)) {
      try {
        if (read_book_meta(xml_path).digest == digest) return Outcome::kSkipped;
      } catch (const Error& e) {
        spdlog::warn("{}: rebuilding unreadable store entry ({})", id, e.what());
      }
    }

    std::vector<std::string> warnings;
    const auto partition = partition_book(raw, *lexicons_, matter, &warnings);

    AnnotatedBook book;
    auto& meta = book.meta;
    meta.source_id = id;
    meta.corpus = raw.corpus();
    meta.title = metadata_value(raw.metadata, "title");
    meta.author = metadata_value(raw.metadata, "author");
    if (auto year = metadata_value(raw.metadata, "year"); !year.empty()) {
      meta.year = parse_year(year);
      if (!meta.year) spdlog::warn("{}: ignoring unparsable year '{}'", id, year);
    }
    meta.subjects = parse_subjects(raw.metadata);
    meta.encoding = metadata_value(raw.metadata, "encoding");
    meta.digest = digest;
    meta.add_phase(Phase::kIngest);
    // Page separators carry a form feed; a newline keeps every offset.
    auto piece = [&](std::size_t begin, std::size_t end) {
      auto s = partition.text.substr(begin, end - begin);
      std::replace(s.begin(), s.end(), '\f', '\n');
      return s;
    };
    for (const auto& span : partition.spans) {
      MatterBlock block{span.kind, piece(span.start, span.end)};
      (span.end <= partition.body_begin ? book.front : book.back).push_back(std::move(block));
    }
    book.raw_body = piece(partition.body_begin, partition.body_end);
    write_if_changed(xml_path, serialize(book));
    return Outcome::kProcessed;
  });
  return tally.finish();
}

PhaseSummary Pipeline::dedup() {
  Tally tally("dedup");
  const auto ids = store_books();
  const auto& config = options_.config;
  std::string state =
      config.digest_of({"seed", "dedup.shingle_words", "dedup.num_hashes", "dedup.threshold", "dedup.title_author_match"}) +
      "\n";
  for (const auto& id : ids) {
    try {
      state += fmt::format("{} {}\n", id, read_book_meta(book_dir(id) / kBookXml).digest);
    } catch (const Error&) {
      state += id + " ?\n";
    }
  }
  const auto manifest_path = corpus_dir() / kManifest;
  const auto state_path = corpus_dir() / kDedupState;
  if (!options_.force && fs::is_regular_file(manifest_path) && fs::is_regular_file(state_path) &&
      read_file(state_path) == state) {
    for (std::size_t i = 0; i < ids.size(); ++i) tally.skipped();
    return tally.finish();
  }

  const auto fp_options = fingerprint_options(config);
  std::vector<std::optional<CorpusEntry>> entries(ids.size());
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < ids.size(); ++i) slot[ids[i]] = i;
  run_books(ids, config.get_int("jobs"), tally, *progress_, "dedup", [&](const std::string& id) {
    const auto book = read_book(book_dir(id) / kBookXml);
    if (!book.meta.has_phase(Phase::kIngest)) throw Error(ErrorCode::kMissingPhase, missing_stamp(Phase::kIngest, "ingest"));
    const auto body = body_text(book);
    CorpusEntry entry;
    entry.id = id;
    entry.title = book.meta.title;
    entry.author = book.meta.author;
    entry.year = book.meta.year;
    entry.corpus = book.meta.corpus;
    entry.text_length = body.size();
    entry.fingerprint = fingerprint(body, book.meta.title, book.meta.author, fp_options);
    entries[slot.at(id)] = std::move(entry);
    return Outcome::kProcessed;
  });

  CorpusIndex index;
  for (auto& e : entries) {
    if (e) index.entries.push_back(std::move(*e));
  }
  index = dedup_corpus(std::move(index), dedup_options(config));
  for (const auto& e : index.entries) {
    if (e.representative_of) spdlog::info("dedup: {} duplicates {}", e.id, *e.representative_of);
  }
  write_if_changed(manifest_path, to_jsonl(index));
  if (!tally.has_failures()) {
    write_if_changed(state_path, state);
  } else {
    std::error_code ec;
    fs::remove(state_path, ec);
  }
  return tally.finish();
}

PhaseSummary Pipeline::annotate() {
  Tally tally("annotate");
  const auto kept = kept_books();
  std::vector<std::string> ids;
  for (const auto& id : store_books()) {
    if (std::binary_search(kept.begin(), kept.end(), id)) {
      ids.push_back(id);
    } else {
      tally.skipped();
      spdlog::info("annotate: {} is not a kept book in the manifest", id);
    }
  }
  const auto segment = segment_options(options_.config);
  const auto characters = character_options(options_.config);
  run_books(ids, options_.config.get_int("jobs"), tally, *progress_, "annotate", [&](const std::string& id) {
    const auto xml_path = book_dir(id) / kBookXml;
    const auto meta = read_book_meta(xml_path);
    if (!meta.has_phase(Phase::kIngest)) throw Error(ErrorCode::kMissingPhase, missing_stamp(Phase::kIngest, "ingest"));
    if (!options_.force && meta.has_phase(Phase::kCharacters)) return Outcome::kSkipped;

    auto book = read_book(xml_path);
    if (!book.raw_body) {
      book.raw_body = body_text(book);
      book.lead.clear();
      book.body.clear();
      book.characters.clear();
      book.quotes.clear();
      book.meta.phases = {Phase::kIngest};
      book.meta.corpus_digest.clear();
    }
    for (const auto& w : annotate_text(book, *lexicons_, segment).warnings) spdlog::warn("{}: {}", id, w);
    for (const auto& w : annotate_characters(book, *lexicons_, characters)) spdlog::debug("{}: {}", id, w);
    write_if_changed(xml_path, serialize(book));
    return Outcome::kProcessed;
  });
  return tally.finish();
}

namespace {

struct BookFeatures {
  BookReport report;
  LemmaCounts lemmas;
  std::vector<std::string> stream;
};

BookFeatures extract_features(const AnnotatedBook& book, const Lexicons& lexicons, const Config& config) {
  BookFeatures f;
  auto& r = f.report;
  const auto& meta = book.meta;
  r.id = meta.source_id;
  r.title = meta.title;
  r.author = meta.author;
  r.corpus = meta.corpus;
  r.year = meta.year;
  r.subjects = meta.subjects;
  r.tokens = static_cast<std::int64_t>(token_count(book));
  for (const auto& sentence : sentences(book)) {
    (void)sentence;
    ++r.sentences;
  }
  r.sections = std::count_if(book.body.begin(), book.body.end(), [](const Section& s) { return s.header.has_value(); });
  r.quotes = static_cast<std::int64_t>(book.quotes.size());
  r.attributed_quotes =
      std::count_if(book.quotes.begin(), book.quotes.end(), [](const QuoteSpan& q) { return q.speaker.has_value(); });
  for (const auto& c : book.characters) {
    CharacterSummary s{c.id, c.canonical_name, c.gender, c.count(), {}, c.gcc, c.fpcc, c.spcc};
    for (const auto& [alias, count] : c.aliases) s.aliases[alias] = count;
    r.characters.push_back(std::move(s));
  }
  const auto stats = protagonist_stats(book.characters);
  r.protagonist = stats.protagonist;
  r.top2_ratio = stats.top2_ratio;
  r.timeline = build_occurrence_timeline(book, static_cast<std::size_t>(config.get_int("timeline.top_k")));
  r.network = build_interaction_network(book.characters, config.get_int("network.window"),
                                        config.get_int("network.min_co"));
  r.gender = character_gender_shares(book.characters);
  r.readability = readability_suite(book, lexicons);
  try {
    for (const auto& share : pos_distribution(book)) r.pos.push_back({share.tag, share.count, share.percent, {}, {}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUndefined) throw;
  }
  f.lemmas = lemma_counts(book);
  f.stream = embedding_stream(book, lexicons);
  return f;
}

double mean(const std::vector<double>& values) {
  double sum = 0;
  for (double v : values) sum += v;
  return values.empty() ? 0 : sum / static_cast<double>(values.size());
}

}  // namespace

PhaseSummary Pipeline::analyze() {
  Tally tally("analyze");
  const auto& config = options_.config;
  const auto kept = kept_books();

  std::vector<std::string> ids;
  std::string corpus_key = analysis_digest(config) + "\n";
  for (const auto& id : kept) {
    try {
      const auto meta = read_book_meta(book_dir(id) / kBookXml);
      if (!meta.has_phase(Phase::kCharacters)) {
        tally.failed(id, missing_stamp(Phase::kCharacters, "annotate"));
        continue;
      }
      ids.push_back(id);
      corpus_key += fmt::format("{} {}\n", id, meta.digest);
    } catch (const Error& e) {
      tally.failed(id, e.what());
    }
  }
  const auto corpus_digest = hex64(text::fnv1a64(corpus_key));

  bool current = !options_.force;
  for (const auto& id : ids) {
    if (!current) break;
    const auto meta = read_book_meta(book_dir(id) / kBookXml);
    current = meta.has_phase(Phase::kAnalytics) && meta.corpus_digest == corpus_digest &&
              fs::is_regular_file(book_dir(id) / kBookJson);
  }
  if (current) {
    for (std::size_t i = 0; i < ids.size(); ++i) tally.skipped();
    return tally.finish();
  }

  // Per-book features; the documents are released as soon as they are read.
  std::vector<std::optional<BookFeatures>> features(ids.size());
  {
    parallel_for(ids.size(), config.get_int("jobs"), [&](std::size_t i) {
      try {
        features[i] = extract_features(read_book(book_dir(ids[i]) / kBookXml), *lexicons_, config);
      } catch (const std::exception& e) {
        tally.failed(ids[i], e.what());
        progress_->record("analyze", ids[i], false, 0, e.what());
      }
    });
  }

  // Corpus reductions.
  LemmaCounts corpus_lemmas;
  std::vector<EmbeddingDocument> documents;
  std::vector<double> male_population;
  std::map<PosTag, std::vector<double>> pos_population;
  std::map<std::string, std::string> titles;
  for (auto& f : features) {
    if (!f) continue;
    corpus_lemmas.add(f->lemmas);
    documents.push_back({f->report.id, f->report.corpus, std::move(f->stream)});
    if (f->report.gender.male_percent) male_population.push_back(*f->report.gender.male_percent);
    for (const auto& p : f->report.pos) pos_population[p.tag].push_back(p.percent);
    titles[f->report.id] = f->report.title;
  }

  std::optional<BookVectors> vectors;
  if (!documents.empty()) {
    try {
      vectors = train_embeddings(std::move(documents), embedding_options(config));
      write_if_changed(corpus_dir() / kVectors, serialize_vectors(*vectors));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput) throw;
      spdlog::warn("analyze: no book vectors ({})", e.what());
    }
  }
  std::set<std::string> corpora;
  if (vectors) corpora.insert(vectors->corpora.begin(), vectors->corpora.end());

  std::vector<std::string> ready;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (features[i]) {
      slot[ids[i]] = i;
      ready.push_back(ids[i]);
    }
  }
  const auto top_common = static_cast<std::size_t>(config.get_int("vocab.top_common"));
  const auto list_len = static_cast<std::size_t>(config.get_int("vocab.list_len"));
  const auto k = static_cast<std::size_t>(config.get_int("similar.k"));

  run_books(ready, config.get_int("jobs"), tally, *progress_, "analyze", [&](const std::string& id) {
    auto& f = *features[slot.at(id)];
    auto& r = f.report;
    try {
      r.vocabulary = representative_vocabulary(f.lemmas, corpus_lemmas, top_common, list_len);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput) throw;
    }
    for (auto& p : r.pos) {
      const auto& population = pos_population.at(p.tag);
      p.corpus_mean = mean(population);
      p.percentile = percentile(p.percent, population);
    }
    if (r.gender.male_percent) r.male_percent_percentile = percentile(*r.gender.male_percent, male_population);
    if (vectors) {
      for (const auto& n : most_similar(*vectors, id, k, corpora.size() > 1)) {
        r.similar.push_back({n.id, titles.at(n.id), n.corpus, n.similarity});
      }
    }
    r.corpus_digest = corpus_digest;
    write_if_changed(book_dir(id) / kBookJson, book_json(r));

    const auto xml_path = book_dir(id) / kBookXml;
    auto book = read_book(xml_path);
    book.meta.add_phase(Phase::kAnalytics);
    book.meta.corpus_digest = corpus_digest;
    write_if_changed(xml_path, serialize(book));
    f.lemmas = {};
    return Outcome::kProcessed;
  });
  return tally.finish();
}

PhaseSummary Pipeline::corpus_stats() {
  Tally tally("corpus-stats");
  const auto& config = options_.config;
  std::vector<BookReport> reports;
  for (const auto& id : kept_books()) {
    const auto path = book_dir(id) / kBookJson;
    try {
      if (!fs::is_regular_file(path)) throw Error(ErrorCode::kMissingPhase, missing_stamp(Phase::kAnalytics, "analyze"));
      reports.push_back(parse_book_json(read_file(path)));
      tally.processed();
    } catch (const std::exception& e) {
      tally.failed(id, e.what());
    }
  }

  CorpusReport out;
  out.ranks = static_cast<std::size_t>(config.get_int("corpus.ranks"));
  out.outlier_threshold = config.get_double("corpus.outlier_threshold");
  out.reference = reference_distributions(out.ranks);

  std::vector<std::vector<std::int64_t>> counts;
  std::vector<RatioEntry> ratios;
  std::vector<DatedProtagonist> dated;
  std::vector<std::vector<double>> pos_rows;
  for (const auto& r : reports) {
    CorpusBook b{r.id, r.title, r.author, r.corpus, r.year, r.subjects,
                 static_cast<std::int64_t>(r.characters.size()), {}, Gender::kUnknown, r.top2_ratio};
    std::vector<std::int64_t> book_counts;
    for (const auto& c : r.characters) {
      book_counts.push_back(c.count);
      if (r.protagonist && c.id == *r.protagonist) {
        b.protagonist = c.name;
        b.protagonist_gender = c.gender;
      }
    }
    counts.push_back(std::move(book_counts));
    if (r.top2_ratio) ratios.push_back({r.id, *r.top2_ratio});
    if (r.year && r.protagonist) dated.push_back({r.id, *r.year, b.protagonist_gender});
    if (!r.pos.empty()) {
      std::vector<double> row;
      for (const auto& p : r.pos) row.push_back(p.percent);
      pos_rows.push_back(std::move(row));
    }
    if (out.corpus_digest.empty()) out.corpus_digest = r.corpus_digest;
    out.books.push_back(std::move(b));
  }

  try {
    out.rank_share = rank_share_curve(counts, out.ranks);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyInput) throw;
    out.notes.push_back(fmt::format("Rank shares: {}.", e.what()));
  }
  out.top2 = top2_ratio_distribution(ratios, out.outlier_threshold);
  try {
    out.gender_over_time = gender_over_time(dated);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyInput) throw;
    out.notes.push_back(fmt::format("Protagonist gender over time: {}.", e.what()));
  }
  if (!pos_rows.empty()) {
    for (std::size_t t = 0; t < kAnalyzedPos.size(); ++t) {
      double sum = 0;
      for (const auto& row : pos_rows) sum += row[t];
      out.pos_mean[std::string(pos_name(kAnalyzedPos[t]))] = sum / static_cast<double>(pos_rows.size());
    }
  }
  try {
    out.pos_correlation = correlation_matrix(pos_rows);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyInput) throw;
    out.notes.push_back(fmt::format("Part-of-speech correlations: {}.", e.what()));
  }
  write_if_changed(corpus_dir() / kCorpusJson, corpus_json(out));
  return tally.finish();
}

PhaseSummary Pipeline::report() {
  Tally tally("report");
  run_books(kept_books(), options_.config.get_int("jobs"), tally, *progress_, "report", [&](const std::string& id) {
    const auto path = book_dir(id) / kBookJson;
    if (!fs::is_regular_file(path)) throw Error(ErrorCode::kMissingPhase, missing_stamp(Phase::kAnalytics, "analyze"));
    return emit_book_report(parse_book_json(read_file(path)), book_dir(id)) > 0 ? Outcome::kProcessed
                                                                                 : Outcome::kSkipped;
  });
  const auto corpus_path = corpus_dir() / kCorpusJson;
  if (!fs::is_regular_file(corpus_path)) {
    tally.failed(std::string(kCorpusDir), fmt::format("no {}; run 'corpus-stats' first", kCorpusJson));
  } else {
    emit_corpus_report(parse_corpus_json(read_file(corpus_path)), corpus_dir());
  }
  return tally.finish();
}

std::vector<PhaseSummary> Pipeline::all() {
  std::vector<PhaseSummary> out;
  out.push_back(ingest());
  out.push_back(dedup());
  out.push_back(annotate());
  out.push_back(analyze());
  out.push_back(corpus_stats());
  out.push_back(report());
  return out;
}

}  // namespace novelscope
