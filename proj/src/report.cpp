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

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "novelscope/error.hpp"
#include "novelscope/files.hpp"
#include "novelscope/svg.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- JSON helpers ----------------------------------------------------------

template <typename T>
json nullable(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

Gender gender_field(const json& j, const char* key) {
  auto g = parse_gender(j.at(key).get<std::string>());
  if (!g) throw Error(ErrorCode::kParse, fmt::format("unknown gender in '{}'", key));
  return *g;
}

void check_version(const json& j) {
  const int version = j.at("schema_version").get<int>();
  if (version != kReportSchemaVersion) {
    throw Error(ErrorCode::kParse, fmt::format("unsupported schema_version {}", version));
  }
}

template <typename Fn>
auto parse_guarded(std::string_view text, std::string_view what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("{}: {}", what, e.what()));
  }
}

json vocabulary_list(const std::vector<VocabularyScore>& scores) {
  json out = json::array();
  for (const auto& s : scores) out.push_back({{"word", s.word}, {"ratio", s.ratio}, {"count", s.count}});
  return out;
}

std::vector<VocabularyScore> parse_vocabulary_list(const json& j) {
  std::vector<VocabularyScore> out;
  for (const auto& s : j) {
    out.push_back({s.at("word").get<std::string>(), s.at("ratio").get<double>(), s.at("count").get<std::int64_t>()});
  }
  return out;
}

// ---- HTML helpers ----------------------------------------------------------

std::string esc(std::string_view s) { return svg::escape(s); }

std::string number(double v, int decimals = 2) { return text::fixed(v, decimals); }

std::string number(const std::optional<double>& v, int decimals = 2) {
  return v ? number(*v, decimals) : std::string("n/a");
}

std::string page(std::string_view title, std::string_view body) {
  return fmt::format(
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{}</title>\n"
      "<style>\nbody{{font-family:sans-serif;max-width:900px;margin:2em auto;color:#222}}\n"
      "table{{border-collapse:collapse;margin:1em 0}}\ntd,th{{border:1px solid #ccc;padding:2px 6px;text-align:left}}\n"
      "th{{background:#f0f0f0}}\n.note{{color:#666;font-style:italic}}\n</style>\n</head>\n<body>\n{}</body>\n</html>\n",
      esc(title), body);
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = "<table>\n<tr>";
  for (const auto& h : header) out += "<th>" + esc(h) + "</th>";
  out += "</tr>\n";
  for (const auto& row : rows) {
    out += "<tr>";
    for (const auto& cell : row) out += "<td>" + cell + "</td>";
    out += "</tr>\n";
  }
  return out + "</table>\n";
}

std::string note(std::string_view text) { return "<p class=\"note\">" + esc(text) + "</p>\n"; }

std::string book_link(std::string_view id, std::string_view title, std::string_view prefix) {
  return fmt::format("<a href=\"{}{}/index.html\">{}</a>", prefix, esc(id), esc(title.empty() ? id : title));
}

std::string character_name(const BookReport& report, int id) {
  for (const auto& c : report.characters) {
    if (c.id == id) return c.name;
  }
  return fmt::format("#{}", id);
}

std::string book_summary(const BookReport& r) {
  std::vector<std::vector<std::string>> rows = {
      {"Tokens", std::to_string(r.tokens)},
      {"Sentences", std::to_string(r.sentences)},
      {"Headed sections", std::to_string(r.sections)},
      {"Quotations", fmt::format("{} ({} attributed)", r.quotes, r.attributed_quotes)},
      {"Protagonist", r.protagonist ? esc(character_name(r, *r.protagonist)) : "none"},
      {"Top-2 mention ratio", number(r.top2_ratio)},
  };
  return "<h2>Summary</h2>\n" + table({"Measure", "Value"}, rows);
}

std::string characters_section(const BookReport& r) {
  std::string out = "<h2>Characters</h2>\n";
  if (r.characters.empty()) return out + note("No characters were identified.");
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : r.characters) {
    std::vector<std::string> aliases;
    for (const auto& [alias, count] : c.aliases) aliases.push_back(fmt::format("{} ({})", esc(alias), count));
    rows.push_back({std::to_string(c.id), esc(c.name), std::string(gender_name(c.gender)), std::to_string(c.count),
                    text::join(aliases, ", "), std::to_string(c.gcc), std::to_string(c.fpcc),
                    std::to_string(c.spcc)});
  }
  return out + table({"Id", "Name", "Gender", "Mentions", "Aliases", "Gendered pronouns", "First person in quotes",
                      "Second person in quotes"},
                     rows);
}

std::string timeline_section(const BookReport& r) {
  std::vector<svg::TimelineRow> rows;
  for (const auto& s : r.timeline.series) rows.push_back({s.name, s.positions});
  return "<h2>Occurrence timeline</h2>\n" +
         svg::timeline_chart({"Mentions across the book", "position in book", ""}, rows, r.timeline.chapter_breaks) +
         "\n";
}

std::string network_section(const BookReport& r) {
  std::vector<svg::GraphNode> nodes;
  for (const auto& n : r.network.nodes) nodes.push_back({n.character, n.name, n.gender, static_cast<double>(n.size)});
  std::vector<svg::GraphEdge> edges;
  for (const auto& e : r.network.edges) edges.push_back({e.a, e.b, static_cast<double>(e.weight)});
  return "<h2>Interaction network</h2>\n" + svg::network_graph({"Character interactions", "", ""}, nodes, edges) +
         "\n";
}

std::string gender_section(const BookReport& r) {
  std::string out = "<h2>Character gender</h2>\n";
  out += svg::bar_chart({"Characters by gender", "", "characters"}, {"male", "female", "unknown"},
                        {{"characters", "#555555",
                          {static_cast<double>(r.gender.male), static_cast<double>(r.gender.female),
                           static_cast<double>(r.gender.unknown)}}});
  out += "\n";
  out += fmt::format("<p>Male: {}%, female: {}% of characters with known gender.", number(r.gender.male_percent, 1),
                     number(r.gender.female_percent, 1));
  if (r.male_percent_percentile) {
    out += fmt::format(" The male share is at the {} percentile of the corpus.", number(r.male_percent_percentile, 1));
  }
  return out + "</p>\n";
}

std::string similar_section(const BookReport& r) {
  std::string out = "<h2>Similar books</h2>\n";
  if (r.similar.empty()) return out + note("No similar books are available.");
  out += "<ol>\n";
  for (const auto& s : r.similar) {
    out += fmt::format("<li>{} <span class=\"note\">{}, similarity {}</span></li>\n", book_link(s.id, s.title, "../"),
                       esc(s.corpus), number(s.similarity, 3));
  }
  return out + "</ol>\n";
}

std::string vocabulary_section(const BookReport& r) {
  auto words = [](const std::vector<VocabularyScore>& list) {
    std::vector<std::string> out;
    for (const auto& s : list) out.push_back(fmt::format("{} ({})", esc(s.word), number(s.ratio)));
    return out.empty() ? std::string("none") : text::join(out, ", ");
  };
  std::vector<std::string> missing;
  for (const auto& w : r.vocabulary.missing) missing.push_back(esc(w));
  std::string out = "<h2>Representative vocabulary</h2>\n";
  out += "<p><b>Most over-represented:</b> " + words(r.vocabulary.most) + "</p>\n";
  out += "<p><b>Most under-represented:</b> " + words(r.vocabulary.least) + "</p>\n";
  out += "<p><b>Common words never used:</b> " + (missing.empty() ? std::string("none") : text::join(missing, ", ")) +
         "</p>\n";
  return out;
}

std::string pos_section(const BookReport& r) {
  std::string out = "<h2>Parts of speech</h2>\n";
  if (r.pos.empty()) return out + note("No analyzed part-of-speech tags.");
  std::vector<std::string> categories;
  svg::BarSeries book{"this book", "#1f77b4", {}};
  svg::BarSeries corpus{"corpus mean", "#ff7f0e", {}};
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : r.pos) {
    categories.emplace_back(pos_name(p.tag));
    book.values.push_back(p.percent);
    corpus.values.push_back(p.corpus_mean.value_or(0));
    rows.push_back({std::string(pos_name(p.tag)), std::to_string(p.count), number(p.percent),
                    number(p.corpus_mean), number(p.percentile, 1)});
  }
  out += svg::bar_chart({"Part-of-speech share", "", "percent"}, categories, {book, corpus}) + "\n";
  return out + table({"Tag", "Count", "Percent", "Corpus mean", "Percentile"}, rows);
}

std::string readability_section(const BookReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (auto metric : kReadabilityMetrics) {
    auto it = r.readability.find(metric);
    rows.push_back({std::string(metric), it == r.readability.end() ? "n/a" : number(it->second)});
  }
  return "<h2>Readability</h2>\n" + table({"Metric", "Score"}, rows);
}

std::string book_label(const CorpusBook& b) { return book_link(b.id, b.title, ""); }

}  // namespace

// ---- book.json -------------------------------------------------------------

std::string book_json(const BookReport& r) {
  json characters = json::array();
  for (const auto& c : r.characters) {
    characters.push_back({{"id", c.id},
                          {"name", c.name},
                          {"gender", gender_name(c.gender)},
                          {"count", c.count},
                          {"aliases", c.aliases},
                          {"gcc", c.gcc},
                          {"fpcc", c.fpcc},
                          {"spcc", c.spcc}});
  }
  json series = json::array();
  for (const auto& s : r.timeline.series) {
    series.push_back({{"character", s.character}, {"name", s.name}, {"positions", s.positions}});
  }
  json nodes = json::array();
  for (const auto& n : r.network.nodes) {
    nodes.push_back({{"character", n.character}, {"name", n.name}, {"gender", gender_name(n.gender)}, {"size", n.size}});
  }
  json edges = json::array();
  for (const auto& e : r.network.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  json readability = json::object();
  for (const auto& [metric, value] : r.readability) readability[metric] = nullable(value);
  json pos = json::array();
  for (const auto& p : r.pos) {
    pos.push_back({{"tag", pos_name(p.tag)},
                   {"count", p.count},
                   {"percent", p.percent},
                   {"corpus_mean", nullable(p.corpus_mean)},
                   {"percentile", nullable(p.percentile)}});
  }
  json similar = json::array();
  for (const auto& s : r.similar) {
    similar.push_back({{"id", s.id}, {"title", s.title}, {"corpus", s.corpus}, {"similarity", s.similarity}});
  }
  json j = {
      {"schema_version", kReportSchemaVersion},
      {"id", r.id},
      {"title", r.title},
      {"author", r.author},
      {"corpus", r.corpus},
      {"year", nullable(r.year)},
      {"subjects", r.subjects},
      {"counts",
       {{"tokens", r.tokens},
        {"sentences", r.sentences},
        {"sections", r.sections},
        {"quotes", r.quotes},
        {"attributed_quotes", r.attributed_quotes}}},
      {"characters", characters},
      {"protagonist", nullable(r.protagonist)},
      {"top2_ratio", nullable(r.top2_ratio)},
      {"timeline", {{"series", series}, {"chapter_breaks", r.timeline.chapter_breaks}}},
      {"network", {{"nodes", nodes}, {"edges", edges}}},
      {"gender",
       {{"male", r.gender.male},
        {"female", r.gender.female},
        {"unknown", r.gender.unknown},
        {"male_percent", nullable(r.gender.male_percent)},
        {"female_percent", nullable(r.gender.female_percent)},
        {"male_percent_percentile", nullable(r.male_percent_percentile)}}},
      {"readability", readability},
      {"pos", pos},
      {"vocabulary",
       {{"most", vocabulary_list(r.vocabulary.most)},
        {"least", vocabulary_list(r.vocabulary.least)},
        {"missing", r.vocabulary.missing}}},
      {"similar", similar},
      {"corpus_digest", r.corpus_digest},
  };
  return j.dump(1) + "\n";
}

BookReport parse_book_json(std::string_view text) {
  return parse_guarded(text, "book.json", [](const json& j) {
    check_version(j);
    BookReport r;
    r.id = j.at("id").get<std::string>();
    r.title = j.at("title").get<std::string>();
    r.author = j.at("author").get<std::string>();
    r.corpus = j.at("corpus").get<std::string>();
    r.year = optional_field<int>(j, "year");
    r.subjects = j.at("subjects").get<std::vector<std::string>>();
    const auto& counts = j.at("counts");
    r.tokens = counts.at("tokens").get<std::int64_t>();
    r.sentences = counts.at("sentences").get<std::int64_t>();
    r.sections = counts.at("sections").get<std::int64_t>();
    r.quotes = counts.at("quotes").get<std::int64_t>();
    r.attributed_quotes = counts.at("attributed_quotes").get<std::int64_t>();
    for (const auto& c : j.at("characters")) {
      r.characters.push_back({c.at("id").get<int>(), c.at("name").get<std::string>(), gender_field(c, "gender"),
                              c.at("count").get<std::int64_t>(),
                              c.at("aliases").get<std::map<std::string, std::int64_t>>(),
                              c.at("gcc").get<std::int64_t>(), c.at("fpcc").get<std::int64_t>(),
                              c.at("spcc").get<std::int64_t>()});
    }
    r.protagonist = optional_field<int>(j, "protagonist");
    r.top2_ratio = optional_field<double>(j, "top2_ratio");
    const auto& timeline = j.at("timeline");
    for (const auto& s : timeline.at("series")) {
      r.timeline.series.push_back(
          {s.at("character").get<int>(), s.at("name").get<std::string>(), s.at("positions").get<std::vector<double>>()});
    }
    r.timeline.chapter_breaks = timeline.at("chapter_breaks").get<std::vector<double>>();
    const auto& network = j.at("network");
    for (const auto& n : network.at("nodes")) {
      r.network.nodes.push_back(
          {n.at("character").get<int>(), n.at("name").get<std::string>(), gender_field(n, "gender"), n.at("size").get<int>()});
    }
    for (const auto& e : network.at("edges")) {
      r.network.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.at("weight").get<std::int64_t>()});
    }
    const auto& gender = j.at("gender");
    r.gender.male = gender.at("male").get<int>();
    r.gender.female = gender.at("female").get<int>();
    r.gender.unknown = gender.at("unknown").get<int>();
    r.gender.male_percent = optional_field<double>(gender, "male_percent");
    r.gender.female_percent = optional_field<double>(gender, "female_percent");
    r.male_percent_percentile = optional_field<double>(gender, "male_percent_percentile");
    for (const auto& [metric, value] : j.at("readability").items()) {
      r.readability[metric] = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
    }
    for (const auto& p : j.at("pos")) {
      auto tag = parse_pos(p.at("tag").get<std::string>());
      if (!tag) throw Error(ErrorCode::kParse, "book.json: unknown part-of-speech tag");
      r.pos.push_back({*tag, p.at("count").get<std::int64_t>(), p.at("percent").get<double>(),
                       optional_field<double>(p, "corpus_mean"), optional_field<double>(p, "percentile")});
    }
    const auto& vocabulary = j.at("vocabulary");
    r.vocabulary.most = parse_vocabulary_list(vocabulary.at("most"));
    r.vocabulary.least = parse_vocabulary_list(vocabulary.at("least"));
    r.vocabulary.missing = vocabulary.at("missing").get<std::vector<std::string>>();
    for (const auto& s : j.at("similar")) {
      r.similar.push_back({s.at("id").get<std::string>(), s.at("title").get<std::string>(),
                           s.at("corpus").get<std::string>(), s.at("similarity").get<double>()});
    }
    r.corpus_digest = j.at("corpus_digest").get<std::string>();
    return r;
  });
}

// ---- corpus.json -----------------------------------------------------------

std::string corpus_json(const CorpusReport& r) {
  json books = json::array();
  for (const auto& b : r.books) {
    books.push_back({{"id", b.id},
                     {"title", b.title},
                     {"author", b.author},
                     {"corpus", b.corpus},
                     {"year", nullable(b.year)},
                     {"subjects", b.subjects},
                     {"characters", b.characters},
                     {"protagonist", nullable(b.protagonist)},
                     {"protagonist_gender", gender_name(b.protagonist_gender)},
                     {"top2_ratio", nullable(b.top2_ratio)}});
  }
  json histogram = json::array();
  for (const auto& bin : r.top2.histogram) {
    histogram.push_back({{"lower", bin.lower}, {"upper", bin.upper}, {"count", bin.count}});
  }
  json outliers = json::array();
  for (const auto& o : r.top2.outliers) outliers.push_back({{"id", o.id}, {"ratio", o.ratio}});
  json gender = json::array();
  for (const auto& bin : r.gender_over_time) {
    gender.push_back({{"first_year", bin.first_year},
                      {"last_year", bin.last_year},
                      {"books", bin.books},
                      {"known", bin.known},
                      {"male_percent", nullable(bin.male_percent)}});
  }
  json matrix = json::array();
  for (const auto& row : r.pos_correlation) {
    json cells = json::array();
    for (const auto& cell : row) cells.push_back(nullable(cell));
    matrix.push_back(cells);
  }
  json tags = json::array();
  for (auto tag : kAnalyzedPos) tags.push_back(pos_name(tag));
  json j = {
      {"schema_version", kReportSchemaVersion},
      {"books", books},
      {"rank_share",
       {{"ranks", r.ranks},
        {"books", r.rank_share ? json(r.rank_share->books) : json(0)},
        {"observed", r.rank_share ? json(r.rank_share->mean_share) : json(nullptr)},
        {"benford", r.reference.benford},
        {"zipf", r.reference.zipf}}},
      {"top2_ratio", {{"threshold", r.outlier_threshold}, {"histogram", histogram}, {"outliers", outliers}}},
      {"gender_over_time", gender},
      {"pos_correlation", {{"tags", tags}, {"matrix", matrix}}},
      {"pos_mean", r.pos_mean},
      {"notes", r.notes},
      {"corpus_digest", r.corpus_digest},
  };
  return j.dump(1) + "\n";
}

CorpusReport parse_corpus_json(std::string_view text) {
  return parse_guarded(text, "corpus.json", [](const json& j) {
    check_version(j);
    CorpusReport r;
    for (const auto& b : j.at("books")) {
      r.books.push_back({b.at("id").get<std::string>(), b.at("title").get<std::string>(),
                         b.at("author").get<std::string>(), b.at("corpus").get<std::string>(),
                         optional_field<int>(b, "year"), b.at("subjects").get<std::vector<std::string>>(),
                         b.at("characters").get<std::int64_t>(), optional_field<std::string>(b, "protagonist"),
                         gender_field(b, "protagonist_gender"), optional_field<double>(b, "top2_ratio")});
    }
    const auto& rank = j.at("rank_share");
    r.ranks = rank.at("ranks").get<std::size_t>();
    if (!rank.at("observed").is_null()) {
      r.rank_share = RankShare{rank.at("observed").get<std::vector<double>>(), rank.at("books").get<std::size_t>()};
    }
    r.reference.benford = rank.at("benford").get<std::vector<double>>();
    r.reference.zipf = rank.at("zipf").get<std::vector<double>>();
    const auto& top2 = j.at("top2_ratio");
    r.outlier_threshold = top2.at("threshold").get<double>();
    for (const auto& bin : top2.at("histogram")) {
      r.top2.histogram.push_back(
          {bin.at("lower").get<double>(), bin.at("upper").get<double>(), bin.at("count").get<std::int64_t>()});
    }
    for (const auto& o : top2.at("outliers")) {
      r.top2.outliers.push_back({o.at("id").get<std::string>(), o.at("ratio").get<double>()});
    }
    for (const auto& bin : j.at("gender_over_time")) {
      r.gender_over_time.push_back({bin.at("first_year").get<int>(), bin.at("last_year").get<int>(),
                                    bin.at("books").get<std::size_t>(), bin.at("known").get<std::size_t>(),
                                    optional_field<double>(bin, "male_percent")});
    }
    for (const auto& row : j.at("pos_correlation").at("matrix")) {
      std::vector<std::optional<double>> cells;
      for (const auto& cell : row) cells.push_back(cell.is_null() ? std::nullopt : std::optional<double>(cell.get<double>()));
      r.pos_correlation.push_back(std::move(cells));
    }
    r.pos_mean = j.at("pos_mean").get<std::map<std::string, double>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.corpus_digest = j.at("corpus_digest").get<std::string>();
    return r;
  });
}

// ---- HTML ------------------------------------------------------------------

std::string book_html(const BookReport& r) {
  std::string body = fmt::format("<p><a href=\"../_corpus/corpus.html\">Corpus overview</a></p>\n<h1>{}</h1>\n",
                                 esc(r.title.empty() ? r.id : r.title));
  std::string byline = r.author.empty() ? std::string("Unknown author") : esc(r.author);
  if (r.year) byline += fmt::format(", {}", *r.year);
  body += fmt::format("<p>{} <span class=\"note\">({}, {})</span></p>\n", byline, esc(r.corpus), esc(r.id));
  if (!r.subjects.empty()) {
    std::vector<std::string> subjects;
    for (const auto& s : r.subjects) subjects.push_back(esc(s));
    body += "<p>Subjects: " + text::join(subjects, "; ") + "</p>\n";
  }
  body += book_summary(r);
  body += characters_section(r);
  body += timeline_section(r);
  body += network_section(r);
  body += gender_section(r);
  body += similar_section(r);
  body += vocabulary_section(r);
  body += pos_section(r);
  body += readability_section(r);
  return page(r.title.empty() ? r.id : r.title, body);
}

std::string corpus_html(const CorpusReport& r) {
  std::string body = "<h1>Corpus overview</h1>\n";
  body += fmt::format("<p>{} books. <a href=\"authors.html\">Authors</a> | <a href=\"subjects.html\">Subjects</a></p>\n",
                      r.books.size());
  for (const auto& n : r.notes) body += note(n);

  body += "<h2>Share of mentions by character rank</h2>\n";
  std::vector<svg::LineSeries> rank_series;
  auto ranked = [](const std::vector<double>& values) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < values.size(); ++i) points.emplace_back(static_cast<double>(i + 1), values[i]);
    return points;
  };
  if (r.rank_share) rank_series.push_back({"observed", "#1f77b4", ranked(r.rank_share->mean_share)});
  rank_series.push_back({"Benford", "#2ca02c", ranked(r.reference.benford)});
  rank_series.push_back({"Zipf", "#d62728", ranked(r.reference.zipf)});
  body += svg::line_chart({"Mean mention share by rank", "character rank", "share"}, rank_series) + "\n";
  if (r.rank_share) {
    body += fmt::format("<p>Observed curve averaged over {} books with at least {} characters.</p>\n",
                        r.rank_share->books, r.ranks);
  }

  body += "<h2>Protagonist gender over time</h2>\n";
  if (r.gender_over_time.empty()) {
    body += note("Too few dated books for ten bins.");
  } else {
    std::vector<std::pair<double, double>> points;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.gender_over_time.size(); ++i) {
      const auto& bin = r.gender_over_time[i];
      if (bin.male_percent) points.emplace_back(static_cast<double>(i + 1), *bin.male_percent);
      rows.push_back({std::to_string(i + 1),
                      bin.books == 0 ? std::string("empty") : fmt::format("{}-{}", bin.first_year, bin.last_year),
                      std::to_string(bin.books), std::to_string(bin.known), number(bin.male_percent, 1)});
    }
    body += svg::line_chart({"Male protagonists by period", "period", "percent male"},
                            {{"male protagonists", "#1f77b4", points}}) +
            "\n";
    body += table({"Period", "Years", "Books", "Known gender", "Percent male"}, rows);
  }

  body += "<h2>Part-of-speech correlations</h2>\n";
  if (r.pos_correlation.empty()) {
    body += note("Too few books for correlations.");
  } else {
    std::vector<std::string> names;
    for (auto tag : kAnalyzedPos) names.emplace_back(pos_name(tag));
    body += svg::heatmap({"Pearson correlation of part-of-speech shares", "", ""}, names, r.pos_correlation) + "\n";
  }

  body += "<h2>Top-2 character ratio</h2>\n";
  std::vector<std::string> categories;
  svg::BarSeries counts{"books", "#555555", {}};
  for (const auto& bin : r.top2.histogram) {
    categories.push_back(number(bin.lower));
    counts.values.push_back(static_cast<double>(bin.count));
  }
  body += svg::bar_chart({"Ratio of the two most mentioned characters", "ratio (lower bin edge)", "books"}, categories,
                         {counts}) +
          "\n";
  std::vector<std::vector<std::string>> outliers;
  for (const auto& o : r.top2.outliers) {
    auto it = std::find_if(r.books.begin(), r.books.end(), [&](const CorpusBook& b) { return b.id == o.id; });
    outliers.push_back({it == r.books.end() ? esc(o.id) : book_label(*it), number(o.ratio)});
  }
  body += fmt::format("<p>Books with a ratio above {}:</p>\n", number(r.outlier_threshold));
  body += outliers.empty() ? note("None.") : table({"Book", "Ratio"}, outliers);

  body += "<h2>Books</h2>\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : r.books) {
    rows.push_back({book_label(b), esc(b.author), b.year ? std::to_string(*b.year) : "", std::to_string(b.characters),
                    b.protagonist ? esc(*b.protagonist) : "", number(b.top2_ratio)});
  }
  body += table({"Book", "Author", "Year", "Characters", "Protagonist", "Top-2 ratio"}, rows);
  return page("Corpus overview", body);
}

namespace {

std::string grouped_page(std::string_view title,
                         const std::map<std::string, std::vector<const CorpusBook*>>& groups) {
  std::string body = fmt::format("<p><a href=\"corpus.html\">Corpus overview</a></p>\n<h1>{}</h1>\n", esc(title));
  if (groups.empty()) body += note("No entries.");
  for (const auto& [name, books] : groups) {
    body += "<h2>" + esc(name) + "</h2>\n<ul>\n";
    for (const auto* b : books) body += "<li>" + book_link(b->id, b->title, "../") + "</li>\n";
    body += "</ul>\n";
  }
  return page(title, body);
}

}  // namespace

std::string authors_html(const CorpusReport& r) {
  std::map<std::string, std::vector<const CorpusBook*>> groups;
  for (const auto& b : r.books) groups[b.author.empty() ? "Unknown author" : b.author].push_back(&b);
  return grouped_page("Authors", groups);
}

std::string subjects_html(const CorpusReport& r) {
  std::map<std::string, std::vector<const CorpusBook*>> groups;
  for (const auto& b : r.books) {
    for (const auto& s : b.subjects) groups[s].push_back(&b);
  }
  return grouped_page("Subjects", groups);
}

std::size_t emit_book_report(const BookReport& report, const fs::path& dir) {
  std::size_t changed = 0;
  changed += write_if_changed(dir / "book.json", book_json(report));
  changed += write_if_changed(dir / "index.html", book_html(report));
  return changed;
}

std::size_t emit_corpus_report(const CorpusReport& report, const fs::path& dir) {
  std::size_t changed = 0;
  changed += write_if_changed(dir / "corpus.json", corpus_json(report));
  changed += write_if_changed(dir / "corpus.html", corpus_html(report));
  changed += write_if_changed(dir / "authors.html", authors_html(report));
  changed += write_if_changed(dir / "subjects.html", subjects_html(report));
  return changed;
}

}  // namespace novelscope
