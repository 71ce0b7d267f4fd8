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

// Aggregates over many books.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "novelscope/document.hpp"

namespace novelscope {

// Mean share of each of the top `ranks` characters, over books with at
// least `ranks` characters. Each book's counts are sorted descending and
// normalized to sum to 1. Throws Error(kEmptyInput) if no book qualifies.
struct RankShare {
  std::vector<double> mean_share;
  std::size_t books = 0;  // books that qualified
};
RankShare rank_share_curve(const std::vector<std::vector<std::int64_t>>& character_counts, std::size_t ranks = 9);

struct ReferenceDistributions {
  std::vector<double> benford;  // log10(1 + 1/d)
  std::vector<double> zipf;     // (1/r) / H_ranks
};
// Benford is renormalized over the first `ranks` digits (a no-op for 9).
ReferenceDistributions reference_distributions(std::size_t ranks = 9);

struct RatioEntry {
  std::string id;
  double ratio = 0;
};

struct HistogramBin {
  double lower = 0;  // inclusive
  double upper = 0;  // exclusive
  std::int64_t count = 0;
};

struct RatioDistribution {
  std::vector<HistogramBin> histogram;  // log-spaced, empty bins trimmed at both ends
  std::vector<RatioEntry> outliers;     // ratio > threshold, highest first
};

// Bins are [10^(k/4), 10^((k+1)/4)).
RatioDistribution top2_ratio_distribution(const std::vector<RatioEntry>& ratios, double outlier_threshold = 10);

struct DatedProtagonist {
  std::string id;
  int year = 0;
  Gender gender = Gender::kUnknown;
};

struct GenderBin {
  int first_year = 0;  // both 0 for an empty bin
  int last_year = 0;
  std::size_t books = 0;
  std::size_t known = 0;                // books with a known protagonist gender
  std::optional<double> male_percent;  // absent when known == 0
};

// Ten equal-count bins by year; books sharing a year stay in one bin, so a
// bin can absorb ties and later bins can be smaller or empty. Throws
// Error(kEmptyInput) with fewer than ten books.
std::vector<GenderBin> gender_over_time(std::vector<DatedProtagonist> books, std::size_t bins = 10);

// Pearson correlation; absent when either side has zero variance. Throws
// Error(kLengthMismatch) for unequal lengths.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// rows[book][category]; output [i][j] over categories. Needs >= 3 rows.
std::vector<std::vector<std::optional<double>>> correlation_matrix(const std::vector<std::vector<double>>& rows);

// 100 * (below + equal / 2) / N. Throws Error(kEmptyInput).
double percentile(double value, std::span<const double> population);

}  // namespace novelscope
