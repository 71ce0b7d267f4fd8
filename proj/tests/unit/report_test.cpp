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

#include "novelscope/report.hpp"

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "novelscope/svg.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

std::size_t occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Svg, LineChartDrawsOnePathPerSeries) {
  const std::string svg = svg::line_chart({"T", "x", "y"}, {{"a", "#f00", {{0, 1}, {1, 2}, {2, 0}}},
                                                           {"b", "#00f", {{0, 0}}}});
  EXPECT_TRUE(svg.starts_with("<svg"));
  EXPECT_EQ(occurrences(svg, "<path"), 1u);
  EXPECT_EQ(svg, svg::line_chart({"T", "x", "y"}, {{"a", "#f00", {{0, 1}, {1, 2}, {2, 0}}},
                                                   {"b", "#00f", {{0, 0}}}}));
}

TEST(Svg, RejectsBadInput) {
  try {
    svg::line_chart({}, {{"a", "#f00", {{0, 1}, {1, std::nan("")}}}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(svg::bar_chart({}, {"a", "b"}, {{"s", "#000", {1}}}), Error);
  EXPECT_THROW(svg::heatmap({}, {"a", "b"}, {{1.0, 0.0}}), Error);
  EXPECT_THROW(svg::network_graph({}, {{1, "A", Gender::kMale, 3}}, {{1, 2, 5}}), Error);
}

TEST(Svg, EscapesText) {
  EXPECT_EQ(svg::escape("<a & \"b\">"), "&lt;a &amp; &quot;b&quot;&gt;");
  const std::string svg = svg::bar_chart({"<T>", "", ""}, {"x&y"}, {{"s", "#000", {1}}});
  EXPECT_EQ(svg.find("<T>"), std::string::npos);
  EXPECT_NE(svg.find("x&amp;y"), std::string::npos);
}

TEST(Svg, NetworkWithoutEdgesStillDrawsNodes) {
  const std::string svg =
      svg::network_graph({"N", "", ""}, {{1, "A", Gender::kMale, 4}, {2, "B", Gender::kFemale, 9}}, {});
  EXPECT_EQ(occurrences(svg, "<circle"), 2u);
  EXPECT_EQ(occurrences(svg, "<line"), 0u);
}

TEST(Svg, HeatmapCellsAndTimelineTicks) {
  const std::string heat = svg::heatmap({}, {"a", "b"}, {{1.0, std::nullopt}, {std::nullopt, -1.0}});
  EXPECT_EQ(occurrences(heat, "stroke=\"#ffffff\""), 4u);
  const std::string timeline = svg::timeline_chart({}, {{"A", {0.1, 0.5}}, {"B", {0.9}}}, {0.3});
  EXPECT_NE(timeline.find("stroke-dasharray"), std::string::npos);
}

BookReport sample_report() {
  BookReport r;
  r.id = "pg1";
  r.title = "Tale <of> \"Two\" & more";
  r.author = "Anon";
  r.corpus = "gutenberg";
  r.year = 1859;
  r.subjects = {"Fiction"};
  r.tokens = 1000;
  r.sentences = 80;
  r.sections = 3;
  r.quotes = 12;
  r.attributed_quotes = 7;
  r.characters = {{0, "Ann", Gender::kFemale, 30, {{"Ann", 25}, {"Miss Ann", 5}}, 4, 3, 2},
                  {1, "Bob", Gender::kMale, 10, {{"Bob", 10}}, 1, 0, 0}};
  r.protagonist = 0;
  r.top2_ratio = 3.0;
  r.timeline.series = {{0, "Ann", {0.1, 0.2, 0.75}}, {1, "Bob", {0.5}}};
  r.timeline.chapter_breaks = {0.33, 0.66};
  r.network.nodes = {{0, "Ann", Gender::kFemale, 30}, {1, "Bob", Gender::kMale, 10}};
  r.gender = {1, 1, 0, 50.0, 50.0};
  r.male_percent_percentile = 40.0;
  for (auto name : kReadabilityMetrics) r.readability[std::string(name)] = 1.25;
  r.readability["smog"] = std::nullopt;
  for (PosTag tag : kAnalyzedPos) r.pos.push_back({tag, 10, 12.5, 11.0, 50.0});
  r.vocabulary.most = {{"whale", 4.5, 30}};
  r.vocabulary.least = {{"tea", 0.1, 1}};
  r.vocabulary.missing = {"coffee"};
  r.similar = {{"pg2", "Other", "gutenberg", 0.91}};
  r.corpus_digest = "abc";
  return r;
}

TEST(BookJson, RoundTripsAndIsStable) {
  const std::string json = book_json(sample_report());
  EXPECT_TRUE(json.ends_with("\n"));
  const BookReport back = parse_book_json(json);
  EXPECT_EQ(back.title, "Tale <of> \"Two\" & more");
  EXPECT_FALSE(back.readability.at("smog"));
  EXPECT_EQ(back.characters[0].aliases.at("Miss Ann"), 5);
  EXPECT_EQ(book_json(back), json);
}

TEST(BookJson, RejectsMalformedDocuments) {
  auto expect_parse_error = [](std::string_view text) {
    try {
      parse_book_json(text);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  };
  expect_parse_error("{");
  expect_parse_error("{}");
  std::string json = book_json(sample_report());
  json.replace(json.find("\"schema_version\": 1"), 19, "\"schema_version\": 9");
  expect_parse_error(json);
}

CorpusReport sample_corpus() {
  CorpusReport c;
  c.books = {{"pg1", "One", "A", "gutenberg", 1850, {"Fiction"}, 12, "Ann", Gender::kFemale, 3.0},
             {"pg2", "Two", "B", "gutenberg", std::nullopt, {}, 0, std::nullopt, Gender::kUnknown, std::nullopt}};
  c.rank_share = RankShare{{0.5, 0.2, 0.1, 0.05, 0.05, 0.04, 0.03, 0.02, 0.01}, 1};
  c.reference = reference_distributions(9);
  c.top2 = top2_ratio_distribution({{"pg1", 3.0}});
  c.pos_mean = {{"NOUN", 20.0}};
  c.notes = {"gender over time needs at least 10 dated books, have 1"};
  c.corpus_digest = "abc";
  return c;
}

TEST(CorpusJson, RoundTripsAndIsStable) {
  const std::string json = corpus_json(sample_corpus());
  const CorpusReport back = parse_corpus_json(json);
  EXPECT_EQ(back.books.size(), 2u);
  EXPECT_FALSE(back.books[1].year);
  EXPECT_EQ(corpus_json(back), json);
}

TEST(Html, SelfContainedAndEscaped) {
  const std::string html = book_html(sample_report());
  EXPECT_TRUE(html.starts_with("<!DOCTYPE html>"));
  EXPECT_EQ(html.find("<script"), std::string::npos);
  EXPECT_EQ(html.find("Tale <of>"), std::string::npos);
  EXPECT_NE(html.find("Tale &lt;of&gt;"), std::string::npos);
  EXPECT_NE(html.find("../pg2/index.html"), std::string::npos);
  EXPECT_GE(occurrences(html, "<svg"), 3u);
  EXPECT_EQ(html, book_html(sample_report()));

  const std::string corpus = corpus_html(sample_corpus());
  EXPECT_NE(corpus.find("<svg"), std::string::npos);
  EXPECT_NE(corpus.find("needs at least 10 dated books"), std::string::npos);
  EXPECT_NE(authors_html(sample_corpus()).find("pg1/index.html"), std::string::npos);
  EXPECT_NE(subjects_html(sample_corpus()).find("Fiction"), std::string::npos);
}

TEST(Emit, WritesOnlyChangedFiles) {
  testing::TempDir dir;
  EXPECT_EQ(emit_book_report(sample_report(), dir.path()), 2u);
  EXPECT_EQ(emit_book_report(sample_report(), dir.path()), 0u);
  auto changed = sample_report();
  changed.title = "New";
  EXPECT_EQ(emit_book_report(changed, dir.path()), 2u);
  EXPECT_EQ(emit_corpus_report(sample_corpus(), dir / "_corpus"), 4u);
  EXPECT_EQ(emit_corpus_report(sample_corpus(), dir / "_corpus"), 0u);
}

}  // namespace
}  // namespace novelscope
