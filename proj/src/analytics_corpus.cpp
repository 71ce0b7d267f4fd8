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

#include "novelscope/analytics_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "novelscope/error.hpp"

namespace novelscope {

RankShare rank_share_curve(const std::vector<std::vector<std::int64_t>>& character_counts, std::size_t ranks) {
  if (ranks == 0) throw Error(ErrorCode::kInvalidArgument, "ranks must be positive");
  RankShare out;
  out.mean_share.assign(ranks, 0.0);
  for (const auto& counts : character_counts) {
    std::vector<std::int64_t> nonzero;
    std::copy_if(counts.begin(), counts.end(), std::back_inserter(nonzero), [](auto c) { return c > 0; });
    if (nonzero.size() < ranks) continue;
    std::sort(nonzero.begin(), nonzero.end(), std::greater<>());
    nonzero.resize(ranks);
    const double total = static_cast<double>(std::accumulate(nonzero.begin(), nonzero.end(), std::int64_t{0}));
    for (std::size_t r = 0; r < ranks; ++r) out.mean_share[r] += static_cast<double>(nonzero[r]) / total;
    ++out.books;
  }
  if (out.books == 0) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("no book has at least {} characters", ranks));
  }
  for (double& s : out.mean_share) s /= static_cast<double>(out.books);
  return out;
}

ReferenceDistributions reference_distributions(std::size_t ranks) {
  if (ranks == 0) throw Error(ErrorCode::kInvalidArgument, "ranks must be positive");
  ReferenceDistributions out;
  double benford_sum = 0;
  double harmonic = 0;
  for (std::size_t r = 1; r <= ranks; ++r) {
    out.benford.push_back(std::log10(1.0 + 1.0 / static_cast<double>(r)));
    benford_sum += out.benford.back();
    harmonic += 1.0 / static_cast<double>(r);
  }
  for (double& b : out.benford) b /= benford_sum;
  for (std::size_t r = 1; r <= ranks; ++r) out.zipf.push_back((1.0 / static_cast<double>(r)) / harmonic);
  return out;
}

RatioDistribution top2_ratio_distribution(const std::vector<RatioEntry>& ratios, double outlier_threshold) {
  RatioDistribution out;
  std::map<long, std::int64_t> bins;
  for (const auto& r : ratios) {
    if (!(r.ratio > 0) || !std::isfinite(r.ratio)) continue;
    // The small epsilon keeps exact bin edges such as 10 in their own bin.
    const long k = static_cast<long>(std::floor(4.0 * std::log10(r.ratio) + 1e-12));
    ++bins[k];
    if (r.ratio > outlier_threshold) out.outliers.push_back(r);
  }
  if (!bins.empty()) {
    for (long k = bins.begin()->first; k <= bins.rbegin()->first; ++k) {
      auto it = bins.find(k);
      out.histogram.push_back({std::pow(10.0, static_cast<double>(k) / 4.0),
                               std::pow(10.0, static_cast<double>(k + 1) / 4.0), it == bins.end() ? 0 : it->second});
    }
  }
  std::sort(out.outliers.begin(), out.outliers.end(), [](const RatioEntry& a, const RatioEntry& b) {
    return a.ratio != b.ratio ? a.ratio > b.ratio : a.id < b.id;
  });
  return out;
}

std::vector<GenderBin> gender_over_time(std::vector<DatedProtagonist> books, std::size_t bins) {
  if (bins == 0) throw Error(ErrorCode::kInvalidArgument, "bins must be positive");
  if (books.size() < bins) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("need at least {} dated books, have {}", bins, books.size()));
  }
  std::sort(books.begin(), books.end(), [](const auto& a, const auto& b) {
    return a.year != b.year ? a.year < b.year : a.id < b.id;
  });
  const std::size_t n = books.size();
  std::vector<GenderBin> out(bins);
  std::vector<std::size_t> males(bins, 0);
  std::size_t group_bin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || books[i].year != books[i - 1].year) group_bin = i * bins / n;
    auto& bin = out[group_bin];
    if (bin.books == 0) bin.first_year = books[i].year;
    bin.last_year = books[i].year;
    ++bin.books;
    if (books[i].gender != Gender::kUnknown) {
      ++bin.known;
      if (books[i].gender == Gender::kMale) ++males[group_bin];
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (out[b].known > 0) {
      out[b].male_percent = 100.0 * static_cast<double>(males[b]) / static_cast<double>(out[b].known);
    }
  }
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("series lengths differ: {} vs {}", x.size(), y.size()));
  }
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::vector<std::optional<double>>> correlation_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 3) {
    throw Error(ErrorCode::kEmptyInput, fmt::format("correlations need at least 3 books, have {}", rows.size()));
  }
  const std::size_t m = rows.front().size();
  std::vector<std::vector<double>> columns(m, std::vector<double>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m) throw Error(ErrorCode::kLengthMismatch, "rows have different lengths");
    for (std::size_t c = 0; c < m; ++c) columns[c][r] = rows[r][c];
  }
  std::vector<std::vector<std::optional<double>>> out(m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      auto r = pearson(columns[i], columns[j]);
      if (i == j && r) r = 1.0;
      out[i][j] = out[j][i] = r;
    }
  }
  return out;
}

double percentile(double value, std::span<const double> population) {
  if (population.empty()) throw Error(ErrorCode::kEmptyInput, "percentile of an empty population");
  std::size_t below = 0;
  std::size_t equal = 0;
  for (double v : population) {
    below += v < value;
    equal += v == value;
  }
  return 100.0 * (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
         static_cast<double>(population.size());
}

}  // namespace novelscope
