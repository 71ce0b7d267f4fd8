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

// Deterministic SVG charts on an 800x400 canvas. Coordinates are printed
// with three decimals. Non-finite data throws Error(kInvalidArgument).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope::svg {

inline constexpr double kWidth = 800;
inline constexpr double kHeight = 400;

struct Labels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

struct LineSeries {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// One <path> per series with at least two points; axes are <line>s.
std::string line_chart(const Labels& labels, const std::vector<LineSeries>& series);

struct TimelineRow {
  std::string name;
  std::vector<double> positions;  // in [0, 1]
};

// One row of tick marks per character; dashed verticals at the breaks.
std::string timeline_chart(const Labels& labels, const std::vector<TimelineRow>& rows,
                           const std::vector<double>& breaks);

struct BarSeries {
  std::string name;
  std::string color;
  std::vector<double> values;  // one per category
};

std::string bar_chart(const Labels& labels, const std::vector<std::string>& categories,
                      const std::vector<BarSeries>& series);

// Cells coloured from blue (-1) through white (0) to red (+1); absent cells
// are grey.
std::string heatmap(const Labels& labels, const std::vector<std::string>& names,
                    const std::vector<std::vector<std::optional<double>>>& values);

struct GraphNode {
  int id = 0;
  std::string name;
  Gender gender = Gender::kUnknown;
  double size = 0;  // radius grows with its square root
};

struct GraphEdge {
  int a = 0;
  int b = 0;
  double weight = 0;
};

// Nodes on a circle in id order, starting at the top and going clockwise.
std::string network_graph(const Labels& labels, std::vector<GraphNode> nodes, const std::vector<GraphEdge>& edges);

std::string gender_color(Gender gender);
std::string escape(std::string_view text);

}  // namespace novelscope::svg
