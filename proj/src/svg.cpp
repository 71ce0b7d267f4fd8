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

#include "novelscope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/text.hpp"

namespace novelscope::svg {
namespace {

constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr double kPlotWidth = kWidth - kLeft - kRight;
constexpr double kPlotHeight = kHeight - kTop - kBottom;

std::string num(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "chart data must be finite");
  return text::fixed(v, 3);
}

void check_finite(double v) { num(v); }

struct Range {
  double lo = 0;
  double hi = 1;
};

Range padded(double lo, double hi) {
  if (lo == hi) {
    const double pad = lo == 0 ? 1 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

class Canvas {
 public:
  explicit Canvas(const Labels& labels) {
    out_ = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        num(kWidth), num(kHeight));
    out_ += fmt::format("<rect x=\"0.000\" y=\"0.000\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", num(kWidth),
                        num(kHeight));
    if (!labels.title.empty()) {
      text(kWidth / 2, 22, labels.title, "middle", "font-size=\"15\"");
    }
    if (!labels.x_axis.empty()) text(kLeft + kPlotWidth / 2, kHeight - 10, labels.x_axis, "middle");
    if (!labels.y_axis.empty()) {
      out_ += fmt::format("<text x=\"{0}\" y=\"{1}\" text-anchor=\"middle\" transform=\"rotate(-90 {0} {1})\">{2}</text>\n",
                          num(16), num(kTop + kPlotHeight / 2), escape(labels.y_axis));
    }
  }

  void axes() {
    line(kLeft, kTop + kPlotHeight, kLeft + kPlotWidth, kTop + kPlotHeight, "#333333");
    line(kLeft, kTop, kLeft, kTop + kPlotHeight, "#333333");
  }

  void line(double x1, double y1, double x2, double y2, std::string_view color, std::string_view extra = {}) {
    out_ += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"{}{}/>\n", num(x1), num(y1), num(x2),
                        num(y2), color, extra.empty() ? "" : " ", extra);
  }

  void text(double x, double y, std::string_view content, std::string_view anchor, std::string_view extra = {}) {
    out_ += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"{}\"{}{}>{}</text>\n", num(x), num(y), anchor,
                        extra.empty() ? "" : " ", extra, escape(content));
  }

  void raw(std::string_view s) { out_ += s; }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 8;
    for (const auto& [name, color] : entries) {
      out_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10.000\" height=\"10.000\" fill=\"{}\"/>\n",
                          num(kLeft + kPlotWidth - 150), num(y - 9), color);
      text(kLeft + kPlotWidth - 135, y, name, "start");
      y += 16;
    }
  }

  // Tick labels for a numeric y range.
  void y_ticks(const Range& r, double (*to_y)(const Range&, double)) {
    for (int i = 0; i <= 4; ++i) {
      const double v = r.lo + (r.hi - r.lo) * i / 4.0;
      const double y = to_y(r, v);
      line(kLeft - 4, y, kLeft, y, "#333333");
      text(kLeft - 6, y + 4, text::fixed(v, 3), "end");
    }
  }

  void x_ticks(const Range& r, double (*to_x)(const Range&, double)) {
    for (int i = 0; i <= 4; ++i) {
      const double v = r.lo + (r.hi - r.lo) * i / 4.0;
      const double x = to_x(r, v);
      line(x, kTop + kPlotHeight, x, kTop + kPlotHeight + 4, "#333333");
      text(x, kTop + kPlotHeight + 16, text::fixed(v, 3), "middle");
    }
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

double map_x(const Range& r, double v) { return kLeft + (v - r.lo) / (r.hi - r.lo) * kPlotWidth; }
double map_y(const Range& r, double v) { return kTop + kPlotHeight - (v - r.lo) / (r.hi - r.lo) * kPlotHeight; }

}  // namespace

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string gender_color(Gender gender) {
  switch (gender) {
    case Gender::kMale: return "#1f77b4";
    case Gender::kFemale: return "#e377c2";
    case Gender::kUnknown: break;
  }
  return "#999999";
}

std::string line_chart(const Labels& labels, const std::vector<LineSeries>& series) {
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  bool any = false;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      check_finite(x);
      check_finite(y);
      if (!any) {
        xlo = xhi = x;
        ylo = yhi = y;
        any = true;
      }
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  Canvas c(labels);
  c.axes();
  if (!any) return c.finish();
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(std::min(0.0, ylo), yhi);
  c.x_ticks(xr, map_x);
  c.y_ticks(yr, map_y);
  std::vector<std::pair<std::string, std::string>> legend;
  for (const auto& s : series) {
    if (s.points.size() >= 2) {
      std::string d;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        d += fmt::format("{}{} {}", i == 0 ? "M" : " L", num(map_x(xr, s.points[i].first)),
                         num(map_y(yr, s.points[i].second)));
      }
      c.raw(fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", d, s.color));
    }
    for (auto [x, y] : s.points) {
      c.raw(fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3.000\" fill=\"{}\"/>\n", num(map_x(xr, x)), num(map_y(yr, y)),
                        s.color));
    }
    legend.emplace_back(s.name, s.color);
  }
  c.legend(legend);
  return c.finish();
}

std::string timeline_chart(const Labels& labels, const std::vector<TimelineRow>& rows,
                           const std::vector<double>& breaks) {
  for (const auto& r : rows) {
    for (double p : r.positions) check_finite(p);
  }
  for (double b : breaks) check_finite(b);
  Canvas c(labels);
  c.axes();
  const Range xr{0, 1};
  c.x_ticks(xr, map_x);
  for (double b : breaks) {
    const double x = map_x(xr, b);
    c.line(x, kTop, x, kTop + kPlotHeight, "#888888", "stroke-dasharray=\"4 3\"");
  }
  if (rows.empty()) return c.finish();
  const double row_height = kPlotHeight / static_cast<double>(rows.size());
  static constexpr std::string_view kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double mid = kTop + row_height * (static_cast<double>(i) + 0.5);
    const auto color = kPalette[i % std::size(kPalette)];
    c.text(kLeft - 6, mid + 4, rows[i].name, "end", "font-size=\"10\"");
    for (double p : rows[i].positions) {
      const double x = map_x(xr, p);
      c.line(x, mid - row_height * 0.3, x, mid + row_height * 0.3, color);
    }
  }
  return c.finish();
}

std::string bar_chart(const Labels& labels, const std::vector<std::string>& categories,
                      const std::vector<BarSeries>& series) {
  double hi = 0;
  for (const auto& s : series) {
    if (s.values.size() != categories.size()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("series '{}' has {} values for {} categories", s.name,
                                                           s.values.size(), categories.size()));
    }
    for (double v : s.values) {
      check_finite(v);
      hi = std::max(hi, v);
    }
  }
  Canvas c(labels);
  c.axes();
  if (categories.empty() || series.empty()) return c.finish();
  const Range yr = padded(0, hi);
  c.y_ticks(yr, map_y);
  const double slot = kPlotWidth / static_cast<double>(categories.size());
  const double bar = slot * 0.8 / static_cast<double>(series.size());
  for (std::size_t k = 0; k < categories.size(); ++k) {
    const double x0 = kLeft + slot * static_cast<double>(k) + slot * 0.1;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = series[s].values[k];
      const double top = map_y(yr, std::max(0.0, v));
      const double base = map_y(yr, 0);
      c.raw(fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                        num(x0 + bar * static_cast<double>(s)), num(top), num(bar), num(base - top), series[s].color));
    }
    c.text(x0 + slot * 0.4, kTop + kPlotHeight + 16, categories[k], "middle");
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (const auto& s : series) legend.emplace_back(s.name, s.color);
  c.legend(legend);
  return c.finish();
}

std::string heatmap(const Labels& labels, const std::vector<std::string>& names,
                    const std::vector<std::vector<std::optional<double>>>& values) {
  if (values.size() != names.size()) throw Error(ErrorCode::kInvalidArgument, "heatmap rows do not match names");
  for (const auto& row : values) {
    if (row.size() != names.size()) throw Error(ErrorCode::kInvalidArgument, "heatmap must be square");
    for (const auto& v : row) {
      if (v) check_finite(*v);
    }
  }
  Canvas c(labels);
  if (names.empty()) return c.finish();
  const double cell = std::min(kPlotWidth, kPlotHeight) / static_cast<double>(names.size());
  const double x0 = kLeft + 40;
  for (std::size_t i = 0; i < names.size(); ++i) {
    c.text(x0 - 4, kTop + cell * (static_cast<double>(i) + 0.5) + 4, names[i], "end", "font-size=\"10\"");
    c.text(x0 + cell * (static_cast<double>(i) + 0.5), kTop + cell * static_cast<double>(names.size()) + 14, names[i],
           "middle", "font-size=\"10\"");
    for (std::size_t j = 0; j < names.size(); ++j) {
      std::string fill = "#dddddd";
      if (const auto& v = values[i][j]) {
        const double t = std::clamp(*v, -1.0, 1.0);
        // White at 0, saturating to red or blue.
        const int fade = static_cast<int>(std::lround(255 * (1 - std::abs(t))));
        fill = t >= 0 ? fmt::format("#ff{:02x}{:02x}", fade, fade) : fmt::format("#{:02x}{:02x}ff", fade, fade);
      }
      c.raw(fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#ffffff\"/>\n",
                        num(x0 + cell * static_cast<double>(j)), num(kTop + cell * static_cast<double>(i)), num(cell),
                        num(cell), fill));
      if (const auto& v = values[i][j]) {
        c.text(x0 + cell * (static_cast<double>(j) + 0.5), kTop + cell * (static_cast<double>(i) + 0.5) + 4,
               text::fixed(*v, 2), "middle", "font-size=\"9\"");
      }
    }
  }
  return c.finish();
}

std::string network_graph(const Labels& labels, std::vector<GraphNode> nodes, const std::vector<GraphEdge>& edges) {
  for (const auto& n : nodes) check_finite(n.size);
  for (const auto& e : edges) check_finite(e.weight);
  std::sort(nodes.begin(), nodes.end(), [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  Canvas c(labels);
  if (nodes.empty()) return c.finish();

  const double cx = kWidth / 2;
  const double cy = kTop + kPlotHeight / 2 + 5;
  const double radius = kPlotHeight / 2 - 20;
  double max_size = 0;
  for (const auto& n : nodes) max_size = std::max(max_size, n.size);
  double max_weight = 0;
  for (const auto& e : edges) max_weight = std::max(max_weight, e.weight);

  std::vector<std::pair<double, double>> where(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) /
                                                     static_cast<double>(nodes.size());
    where[i] = {cx + radius * std::cos(angle), cy + radius * std::sin(angle)};
  }
  auto slot = [&](int id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    return std::nullopt;
  };
  for (const auto& e : edges) {
    const auto a = slot(e.a);
    const auto b = slot(e.b);
    if (!a || !b) throw Error(ErrorCode::kInvalidArgument, fmt::format("edge {}-{} names an unknown node", e.a, e.b));
    const double width = max_weight > 0 ? 0.5 + 4.5 * e.weight / max_weight : 1;
    c.line(where[*a].first, where[*a].second, where[*b].first, where[*b].second, "#bbbbbb",
           fmt::format("stroke-width=\"{}\"", num(width)));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = max_size > 0 ? 4 + 16 * std::sqrt(std::max(0.0, nodes[i].size) / max_size) : 4;
    c.raw(fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", num(where[i].first), num(where[i].second),
                      num(r), gender_color(nodes[i].gender)));
    c.text(where[i].first, where[i].second - r - 3, nodes[i].name, "middle", "font-size=\"10\"");
  }
  return c.finish();
}

}  // namespace novelscope::svg
