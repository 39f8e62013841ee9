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
// Cost model and hardware decision engine: price candidate configurations,
// filter by user constraints, select the cheapest feasible one, sweep the
// latency limit into a step-function decision curve, and compute the
// latency/cost Pareto frontier. All functions are pure.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infercost/detail/format.hpp"
#include "infercost/errors.hpp"
#include "infercost/ingest.hpp"
#include "infercost/types.hpp"

namespace infercost {

/// Relative tolerance for money comparisons; costs closer than this are a
/// tie and selection falls through to the next tie-break key.
inline constexpr double money_rel_tolerance = 1e-9;

inline bool money_equal(double a, double b) {
  return std::abs(a - b) <= money_rel_tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Dollars to run `n_images` inferences: latency (ms/img) x images x hourly
/// rate, with ms-to-hour conversion folded into the 3.6e6 divisor.
inline double cost_per_images(double latency_ms_per_img, MoneyRate rate, std::int64_t n_images) {
  if (!std::isfinite(latency_ms_per_img) || latency_ms_per_img <= 0.0)
    fail(errc::non_finite_input,
         "latency_ms_per_img must be finite and > 0, got " + detail::to_shortest(latency_ms_per_img));
  if (!std::isfinite(rate.usd_per_hour) || rate.usd_per_hour < 0.0)
    fail(errc::non_finite_input,
         "usd_per_hour must be finite and >= 0, got " + detail::to_shortest(rate.usd_per_hour));
  if (n_images <= 0)
    fail(errc::non_finite_input, "n_images must be > 0, got " + std::to_string(n_images));
  return latency_ms_per_img * static_cast<double>(n_images) * rate.usd_per_hour / 3.6e6;
}

/// Benchmark record joined with its hourly rate and the derived cost to run
/// one million inferences.
struct CostedCandidate {
  BenchmarkRecord record;
  MoneyRate rate;
  double cost_per_million_usd = 0.0;
};

inline CostedCandidate make_candidate(BenchmarkRecord record, MoneyRate rate) {
  const double cost = cost_per_images(record.latency_ms_per_img, rate, 1'000'000);
  return CostedCandidate{std::move(record), rate, cost};
}

inline std::vector<CostedCandidate> price_candidates(std::span<const BenchmarkRecord> records,
                                                     const PricingTable& pricing) {
  std::vector<CostedCandidate> candidates;
  candidates.reserve(records.size());
  for (const auto& record : records) {
    auto rate = pricing.find(record.config_id);
    if (!rate) fail(errc::missing_price, "no price for config '" + record.config_id + "'");
    candidates.push_back(make_candidate(record, *rate));
  }
  return candidates;
}

/// True iff the record satisfies every bound that is present. The latency
/// bound is closed: a record with latency exactly at the limit is feasible.
inline bool feasible(const BenchmarkRecord& record, const ConstraintSet& constraints) {
  if (constraints.max_latency_ms && record.latency_ms_per_img > *constraints.max_latency_ms)
    return false;
  if (constraints.min_metric && record.metric_score < *constraints.min_metric) return false;
  if (!constraints.allowed_precisions.contains(record.precision)) return false;
  if (constraints.os_filter && record.os != *constraints.os_filter) return false;
  return true;
}

/// Either the cost-minimal feasible candidate or an explanation of why no
/// candidate qualifies.
struct Decision {
  std::optional<CostedCandidate> optimal;
  std::string infeasible_reason;

  bool is_feasible() const noexcept { return optimal.has_value(); }
};

/// Two decisions pick the same configuration (or are both infeasible).
inline bool same_choice(const Decision& a, const Decision& b) {
  if (a.is_feasible() != b.is_feasible()) return false;
  if (!a.is_feasible()) return true;
  return record_key(a.optimal->record) == record_key(b.optimal->record);
}

namespace detail {

// Tie-break order: cost, then latency, then config id, then fp32 before
// fp16, then linux before windows.
inline bool candidate_less(const CostedCandidate& a, const CostedCandidate& b) {
  if (!money_equal(a.cost_per_million_usd, b.cost_per_million_usd))
    return a.cost_per_million_usd < b.cost_per_million_usd;
  if (a.record.latency_ms_per_img != b.record.latency_ms_per_img)
    return a.record.latency_ms_per_img < b.record.latency_ms_per_img;
  if (a.record.config_id != b.record.config_id) return a.record.config_id < b.record.config_id;
  if (a.record.precision != b.record.precision) return a.record.precision == Precision::fp32;
  return a.record.os == Os::linux && b.record.os != Os::linux;
}

// Constraints with the latency bound stripped; used to phrase infeasibility
// and to find curve breakpoints.
inline ConstraintSet without_latency(ConstraintSet constraints) {
  constraints.max_latency_ms.reset();
  return constraints;
}

}  // namespace detail

/// Cheapest feasible candidate under the constraints, or Infeasible with the
/// minimum achievable latency named when the latency bound alone is the
/// blocker.
inline Decision select_optimal(std::span<const BenchmarkRecord> records,
                               const PricingTable& pricing, const ConstraintSet& constraints) {
  if (records.empty()) fail(errc::empty_record_set, "no benchmark records supplied");
  auto candidates = price_candidates(records, pricing);
  const CostedCandidate* best = nullptr;
  for (const auto& candidate : candidates) {
    if (!feasible(candidate.record, constraints)) continue;
    if (!best || detail::candidate_less(candidate, *best)) best = &candidate;
  }
  if (best) return Decision{*best, {}};

  const auto relaxed = detail::without_latency(constraints);
  double min_latency = std::numeric_limits<double>::infinity();
  for (const auto& candidate : candidates) {
    if (feasible(candidate.record, relaxed))
      min_latency = std::min(min_latency, candidate.record.latency_ms_per_img);
  }
  if (std::isfinite(min_latency)) {
    return Decision{std::nullopt,
                    "no configuration within the latency bound; minimum achievable latency is " +
                        detail::to_fixed(min_latency, 2) + " ms/img"};
  }
  return Decision{std::nullopt, "no configuration matches the precision/metric/os constraints"};
}

struct CurveSegment {
  double t_min_ms = 0.0;
  double t_max_ms = std::numeric_limits<double>::infinity();
  Decision decision;
};

/// Step function mapping a latency limit to the optimal decision. Segments
/// partition (0, inf): contiguous, left-closed at breakpoints, maximal
/// (adjacent segments always differ).
struct DecisionCurve {
  std::string workload_id;
  std::vector<CurveSegment> segments;

  /// Segment containing limit `t` (t > 0).
  const CurveSegment& segment_at(double t) const {
    if (!(t > 0.0)) fail(errc::invalid_argument, "latency limit must be > 0");
    for (const auto& segment : segments) {
      if (t >= segment.t_min_ms && t < segment.t_max_ms) return segment;
    }
    return segments.back();
  }
};

/// Sweep the latency limit over (0, inf). Candidate latencies are the only
/// possible breakpoints: between two consecutive candidate latencies the
/// feasible set, and hence the decision, cannot change.
inline DecisionCurve decision_curve(std::span<const BenchmarkRecord> records,
                                    const PricingTable& pricing,
                                    const ConstraintSet& base_constraints) {
  if (base_constraints.max_latency_ms)
    fail(errc::invalid_constraints, "base constraints must not set max_latency_ms");
  if (records.empty()) fail(errc::empty_record_set, "no benchmark records supplied");
  for (const auto& record : records) {
    if (record.workload_id != records.front().workload_id)
      fail(errc::mixed_workloads, "decision_curve needs a single workload, got '" +
                                      records.front().workload_id + "' and '" + record.workload_id +
                                      "'");
  }
  auto candidates = price_candidates(records, pricing);

  std::vector<double> breakpoints;
  for (const auto& candidate : candidates) {
    if (feasible(candidate.record, base_constraints))
      breakpoints.push_back(candidate.record.latency_ms_per_img);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  DecisionCurve curve;
  curve.workload_id = records.front().workload_id;
  if (breakpoints.empty()) {
    curve.segments.push_back(
        CurveSegment{0.0, std::numeric_limits<double>::infinity(),
                     Decision{std::nullopt,
                              "no configuration matches the precision/metric/os constraints"}});
    return curve;
  }

  curve.segments.push_back(CurveSegment{
      0.0, breakpoints.front(),
      Decision{std::nullopt,
               "no configuration within the latency bound; minimum achievable latency is " +
                   detail::to_fixed(breakpoints.front(), 2) + " ms/img"}});
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    ConstraintSet bounded = base_constraints;
    bounded.max_latency_ms = breakpoints[i];
    Decision decision = select_optimal(records, pricing, bounded);
    const double t_max = i + 1 < breakpoints.size() ? breakpoints[i + 1]
                                                    : std::numeric_limits<double>::infinity();
    if (same_choice(curve.segments.back().decision, decision)) {
      curve.segments.back().t_max_ms = t_max;  // merge: keep segments maximal
    } else {
      curve.segments.push_back(CurveSegment{breakpoints[i], t_max, std::move(decision)});
    }
  }
  return curve;
}

/// Candidates not dominated in (latency, cost); sorted by latency ascending,
/// cost strictly decreasing. A point dominates another when it is <= in both
/// coordinates and < in at least one; exact duplicates collapse to one.
struct ParetoFrontier {
  std::vector<CostedCandidate> points;
};

inline ParetoFrontier pareto_frontier(std::span<const BenchmarkRecord> records,
                                      const PricingTable& pricing) {
  auto candidates = price_candidates(records, pricing);
  std::sort(candidates.begin(), candidates.end(),
            [](const CostedCandidate& a, const CostedCandidate& b) {
              if (a.record.latency_ms_per_img != b.record.latency_ms_per_img)
                return a.record.latency_ms_per_img < b.record.latency_ms_per_img;
              if (a.cost_per_million_usd != b.cost_per_million_usd)
                return a.cost_per_million_usd < b.cost_per_million_usd;
              return detail::candidate_less(a, b);
            });
  ParetoFrontier frontier;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& candidate : candidates) {
    if (!frontier.points.empty()) {
      const auto& last = frontier.points.back();
      if (last.record.latency_ms_per_img == candidate.record.latency_ms_per_img &&
          last.cost_per_million_usd == candidate.cost_per_million_usd)
        continue;  // identical point, keep one
    }
    if (candidate.cost_per_million_usd < best_cost) {
      frontier.points.push_back(candidate);
      best_cost = candidate.cost_per_million_usd;
    }
  }
  return frontier;
}

/// (value - baseline) / baseline. The caller names the baseline; both of the
/// usual percentage phrasings are reachable by swapping arguments.
inline double relative_change(double value, double baseline) {
  if (!std::isfinite(value) || !std::isfinite(baseline))
    fail(errc::non_finite_input, "relative_change needs finite inputs");
  if (baseline == 0.0) fail(errc::zero_baseline, "baseline must be nonzero");
  return (value - baseline) / baseline;
}

inline double mean_relative_change(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) fail(errc::empty_list, "mean_relative_change needs at least one pair");
  double sum = 0.0;
  for (const auto& [value, baseline] : pairs) sum += relative_change(value, baseline);
  return sum / static_cast<double>(pairs.size());
}

/// Decision-curve CSV. Bounds keep their exact (shortest round-trip) form so
/// breakpoints land on the input latencies; "inf" marks the unbounded tail;
/// infeasible rows leave config/precision/cost empty.
inline std::string write_curve_csv(const DecisionCurve& curve) {
  std::string out = "t_min_ms,t_max_ms,decision,config,precision,cost_usd_per_million\n";
  for (const auto& segment : curve.segments) {
    out += detail::to_shortest(segment.t_min_ms);
    out += ',';
    out += detail::to_shortest(segment.t_max_ms);
    out += ',';
    if (segment.decision.is_feasible()) {
      const auto& candidate = *segment.decision.optimal;
      out += "optimal,";
      out += candidate.record.config_id;
      out += ',';
      out += to_string(candidate.record.precision);
      out += ',';
      out += detail::to_fixed(candidate.cost_per_million_usd, 2);
    } else {
      out += "infeasible,,,";
    }
    out += '\n';
  }
  return out;
}

}  // namespace infercost
