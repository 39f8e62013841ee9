// Copyright 2026 The infercost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Latency summaries and the paired Wilcoxon signed-rank test used to check
// that two runtimes produce statistically equivalent outputs. Everything is
// a pure, deterministic function; the exact-tail table is computed per call.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "infercost/errors.hpp"
#include "infercost/ingest.hpp"

namespace infercost {

/// Post-warmup aggregate of a measurement series. The mean is the headline
/// figure; median and stddev ride along for robustness reporting.
struct LatencySummary {
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double stddev_ms = 0.0;
  std::size_t n_used = 0;
  std::size_t n_discarded_warmup = 0;
};

inline LatencySummary summarize(const MeasurementSeries& series) {
  if (series.warmup_count >= series.latencies_ms.size())
    fail(errc::no_post_warmup_samples,
         "warmup " + std::to_string(series.warmup_count) + " leaves no samples out of " +
             std::to_string(series.latencies_ms.size()));
  const auto begin = series.latencies_ms.begin() + static_cast<std::ptrdiff_t>(series.warmup_count);
  std::vector<double> post(begin, series.latencies_ms.end());

  LatencySummary summary;
  summary.n_used = post.size();
  summary.n_discarded_warmup = series.warmup_count;
  summary.mean_ms = std::accumulate(post.begin(), post.end(), 0.0) / static_cast<double>(post.size());

  std::sort(post.begin(), post.end());
  const std::size_t mid = post.size() / 2;
  summary.median_ms =
      post.size() % 2 == 1 ? post[mid] : 0.5 * (post[mid - 1] + post[mid]);

  if (post.size() > 1) {
    double ss = 0.0;
    for (double x : post) ss += (x - summary.mean_ms) * (x - summary.mean_ms);
    summary.stddev_ms = std::sqrt(ss / static_cast<double>(post.size() - 1));  // sample stddev
  }
  return summary;
}

enum class WilcoxonMethod { exact, normal_approx, degenerate };

constexpr std::string_view to_string(WilcoxonMethod m) noexcept {
  switch (m) {
    case WilcoxonMethod::exact: return "exact";
    case WilcoxonMethod::normal_approx: return "normal_approx";
    case WilcoxonMethod::degenerate: return "degenerate";
  }
  return "unknown";
}

struct WilcoxonResult {
  double w_plus = 0.0;           // sum of ranks of positive differences
  std::size_t n_effective = 0;   // pairs with nonzero difference
  double p_value = 1.0;          // two-sided
  WilcoxonMethod method = WilcoxonMethod::degenerate;
  double alpha = 0.05;
  bool reject_at_alpha = false;
};

/// P(W+ >= w) under the null for untied integer ranks 1..n, by dynamic
/// programming over the subset-sum count table. Cheap up to the n = 25
/// switchover; ties break the integer lattice, so tied samples take the
/// approximate path instead.
inline double exact_signed_rank_tail(double w, int n) {
  if (n < 1) fail(errc::invalid_argument, "n must be >= 1");
  if (n > 25) fail(errc::n_too_large, "exact tail supports n <= 25, got " + std::to_string(n));
  const int max_sum = n * (n + 1) / 2;
  if (w <= 0.0) return 1.0;
  if (w > static_cast<double>(max_sum)) return 0.0;
  std::vector<std::uint64_t> count(static_cast<std::size_t>(max_sum) + 1, 0);
  count[0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int s = max_sum; s >= k; --s) count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - k)];
  }
  const int threshold = static_cast<int>(std::ceil(w - 1e-9));
  std::uint64_t above = 0;
  for (int s = std::max(threshold, 0); s <= max_sum; ++s) above += count[static_cast<std::size_t>(s)];
  return static_cast<double>(above) / std::ldexp(1.0, n);
}

namespace detail {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double normal_pdf(double z) {
  static const double inv_sqrt_2pi = 1.0 / std::sqrt(8.0 * std::atan(1.0));
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// CDF of the standardized rank sum with the symmetric Edgeworth kurtosis
// term. The plain continuity-corrected normal deviates from the exact
// two-sided p by up to 0.011 at n = 15; the fourth-cumulant term brings
// that under 0.002 while keeping the distribution's exact symmetry.
inline double signed_rank_cdf(double x, double excess_kurtosis) {
  double f = normal_cdf(x) - normal_pdf(x) * (excess_kurtosis / 24.0) * (x * x * x - 3.0 * x);
  return std::clamp(f, 0.0, 1.0);
}

// Mid-ranks of |d|; ties get the average of the ranks they span.
inline std::vector<double> midranks(const std::vector<double>& abs_values) {
  const std::size_t n = abs_values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return abs_values[a] < abs_values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_values[order[j + 1]] == abs_values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>((i + 1) + (j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

/// Two-sided paired Wilcoxon signed-rank test of zero median difference.
/// Zero differences are discarded; |d| is ranked with mid-rank ties. Exact
/// null enumeration (subset-sum DP) when n_effective <= 25 and |d| is
/// untied, otherwise a continuity-corrected normal approximation whose
/// variance and kurtosis come from the realized (tie-adjusted) ranks.
inline WilcoxonResult wilcoxon_signed_rank(const PairedOutputs& pairs, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(errc::invalid_alpha, "alpha must lie in (0,1), got " + detail::to_shortest(alpha));
  if (pairs.side_a.size() != pairs.side_b.size())
    fail(errc::length_mismatch, "paired sides have different lengths");
  if (pairs.side_a.empty()) fail(errc::empty_pairs, "need at least one pair");

  std::vector<double> diffs;
  diffs.reserve(pairs.side_a.size());
  for (std::size_t i = 0; i < pairs.side_a.size(); ++i) {
    const double d = pairs.side_a[i] - pairs.side_b[i];
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult result;
  result.alpha = alpha;
  result.n_effective = diffs.size();
  if (diffs.empty()) {
    result.method = WilcoxonMethod::degenerate;
    result.p_value = 1.0;
    result.reject_at_alpha = false;
    return result;
  }

  std::vector<double> abs_diffs(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) abs_diffs[i] = std::abs(diffs[i]);
  const auto ranks = detail::midranks(abs_diffs);

  double w_plus = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0.0) w_plus += ranks[i];
  }
  result.w_plus = w_plus;

  std::vector<double> sorted_abs = abs_diffs;
  std::sort(sorted_abs.begin(), sorted_abs.end());
  const bool tied = std::adjacent_find(sorted_abs.begin(), sorted_abs.end()) != sorted_abs.end();

  const auto n = static_cast<int>(diffs.size());
  const double max_sum = static_cast<double>(n) * (static_cast<double>(n) + 1.0) / 2.0;
  if (!tied && n <= 25) {
    result.method = WilcoxonMethod::exact;
    const double upper = exact_signed_rank_tail(w_plus, n);
    const double lower = exact_signed_rank_tail(max_sum - w_plus, n);  // symmetry around max/2
    result.p_value = std::min(1.0, 2.0 * std::min(upper, lower));
  } else {
    result.method = WilcoxonMethod::normal_approx;
    const double mean = max_sum / 2.0;
    double variance = 0.0;
    double fourth_cumulant = 0.0;
    for (double r : ranks) {
      variance += r * r / 4.0;
      fourth_cumulant -= r * r * r * r / 8.0;
    }
    const double sigma = std::sqrt(variance);
    if (sigma <= 0.0) {
      result.p_value = 1.0;
    } else {
      const double gamma2 = fourth_cumulant / (variance * variance);
      const double upper = 1.0 - detail::signed_rank_cdf((w_plus - mean - 0.5) / sigma, gamma2);
      const double lower = detail::signed_rank_cdf((w_plus - mean + 0.5) / sigma, gamma2);
      result.p_value = std::min(1.0, 2.0 * std::min(upper, lower));
    }
  }
  result.reject_at_alpha = result.p_value < alpha;
  return result;
}

}  // namespace infercost
