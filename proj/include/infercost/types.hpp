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
// Validated domain model shared by every other header. All types are plain
// immutable-by-convention values: validate once at the boundary, then read
// freely from any thread.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "infercost/detail/format.hpp"
#include "infercost/errors.hpp"

// GNU language extensions predefine `linux`; we use it as an enumerator.
#if defined(linux)
#undef linux
#endif

namespace infercost {

/// Absolute tolerance used by validators when comparing reals against range
/// bounds. Values within the tolerance of a bound are treated as on it.
inline constexpr double validation_tolerance = 1e-9;

enum class Precision { fp32, fp16 };
enum class Os { linux, windows };
enum class HardwareKind { cpu, gpu };
enum class Task { classification, segmentation };
enum class MetricName { accuracy, dice };

constexpr std::string_view to_string(Precision p) noexcept {
  return p == Precision::fp32 ? "fp32" : "fp16";
}
constexpr std::string_view to_string(Os os) noexcept {
  return os == Os::linux ? "linux" : "windows";
}
constexpr std::string_view to_string(HardwareKind k) noexcept {
  return k == HardwareKind::cpu ? "cpu" : "gpu";
}
constexpr std::string_view to_string(Task t) noexcept {
  return t == Task::classification ? "classification" : "segmentation";
}
constexpr std::string_view to_string(MetricName m) noexcept {
  return m == MetricName::accuracy ? "accuracy" : "dice";
}

inline Precision parse_precision(std::string_view text) {
  if (text == "fp32") return Precision::fp32;
  if (text == "fp16") return Precision::fp16;
  fail(errc::unknown_precision, "expected fp32 or fp16, got '" + std::string(text) + "'");
}

inline Os parse_os(std::string_view text) {
  if (text == "linux") return Os::linux;
  if (text == "windows") return Os::windows;
  fail(errc::unknown_os, "expected linux or windows, got '" + std::string(text) + "'");
}

/// Hourly hardware price in US dollars. The single money unit of the
/// library; parsers convert at the boundary.
struct MoneyRate {
  double usd_per_hour = 0.0;

  bool operator==(const MoneyRate&) const = default;
};

/// One hardware platform in a catalog. `annotation` carries free-text
/// configuration details and is never interpreted.
struct HardwareConfig {
  std::string id;
  std::string display_name;
  HardwareKind kind = HardwareKind::cpu;
  std::set<Precision> supported_precisions;
  std::string annotation;

  bool operator==(const HardwareConfig&) const = default;
};

struct WorkloadSpec {
  std::string id;
  Task task = Task::classification;
  MetricName metric_name = MetricName::accuracy;
  std::vector<std::int64_t> input_shape;

  bool operator==(const WorkloadSpec&) const = default;
};

/// One measured (workload, hardware, precision, OS) cell: per-image latency
/// in milliseconds plus the workload's output-quality score in [0,1].
struct BenchmarkRecord {
  std::string workload_id;
  std::string config_id;
  Precision precision = Precision::fp32;
  Os os = Os::linux;
  double latency_ms_per_img = 0.0;
  double metric_score = 0.0;
  std::int64_t samples = 0;

  bool operator==(const BenchmarkRecord&) const = default;
};

/// User bounds for feasibility filtering. Absent bounds mean unconstrained.
struct ConstraintSet {
  std::optional<double> max_latency_ms;
  std::optional<double> min_metric;
  std::set<Precision> allowed_precisions{Precision::fp32, Precision::fp16};
  std::optional<Os> os_filter;

  bool operator==(const ConstraintSet&) const = default;
};

/// Candidate record with enum fields still in string form, as read from an
/// external file or CLI flags.
struct RawRecord {
  std::string workload;
  std::string config;
  std::string precision;
  std::string os;
  double latency_ms_per_img = 0.0;
  double metric_score = 0.0;
  std::int64_t samples = 0;
};

struct RawConstraints {
  std::optional<double> max_latency_ms;
  std::optional<double> min_metric;
  std::vector<std::string> precisions;
  std::optional<std::string> os;
};

namespace detail {

inline bool within_unit_interval(double x) {
  return std::isfinite(x) && x >= -validation_tolerance && x <= 1.0 + validation_tolerance;
}

inline bool strictly_positive(double x) {
  return std::isfinite(x) && x > validation_tolerance;
}

}  // namespace detail

inline BenchmarkRecord validate_record(const RawRecord& raw) {
  if (!detail::is_identifier(raw.workload))
    fail(errc::invalid_identifier, "workload must match [A-Za-z0-9_-]+, got '" + raw.workload + "'");
  if (!detail::is_identifier(raw.config))
    fail(errc::invalid_identifier, "config must match [A-Za-z0-9_-]+, got '" + raw.config + "'");
  BenchmarkRecord record;
  record.workload_id = raw.workload;
  record.config_id = raw.config;
  record.precision = parse_precision(raw.precision);
  record.os = parse_os(raw.os);
  if (!detail::strictly_positive(raw.latency_ms_per_img))
    fail(errc::non_positive_latency,
         "latency_ms_per_img must be > 0, got " + detail::to_shortest(raw.latency_ms_per_img));
  if (!detail::within_unit_interval(raw.metric_score))
    fail(errc::metric_out_of_range,
         "metric must lie in [0,1], got " + detail::to_shortest(raw.metric_score));
  if (raw.samples <= 0)
    fail(errc::non_positive_samples, "samples must be a positive integer, got " +
                                         std::to_string(raw.samples));
  record.latency_ms_per_img = raw.latency_ms_per_img;
  record.metric_score = raw.metric_score;
  record.samples = raw.samples;
  return record;
}

/// Dataset key: (workload, config, precision, os) must be unique.
inline std::tuple<std::string_view, std::string_view, Precision, Os> record_key(
    const BenchmarkRecord& r) {
  return {r.workload_id, r.config_id, r.precision, r.os};
}

inline void check_unique_keys(std::span<const BenchmarkRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (record_key(records[i]) == record_key(records[j])) {
        const auto& r = records[i];
        fail(errc::duplicate_key, "duplicate record for (" + r.workload_id + ", " + r.config_id +
                                      ", " + std::string(to_string(r.precision)) + ", " +
                                      std::string(to_string(r.os)) + ")");
      }
    }
  }
}

inline ConstraintSet validate_constraints(const RawConstraints& raw) {
  ConstraintSet out;
  if (raw.max_latency_ms) {
    if (!detail::strictly_positive(*raw.max_latency_ms))
      fail(errc::negative_latency_bound, "max_latency_ms must be > 0, got " +
                                             detail::to_shortest(*raw.max_latency_ms));
    out.max_latency_ms = *raw.max_latency_ms;
  }
  if (raw.min_metric) {
    if (!detail::within_unit_interval(*raw.min_metric))
      fail(errc::metric_out_of_range,
           "min_metric must lie in [0,1], got " + detail::to_shortest(*raw.min_metric));
    out.min_metric = *raw.min_metric;
  }
  out.allowed_precisions.clear();
  for (const auto& p : raw.precisions) out.allowed_precisions.insert(parse_precision(p));
  if (out.allowed_precisions.empty())
    fail(errc::empty_precision_set, "at least one precision must be allowed");
  if (raw.os) out.os_filter = parse_os(*raw.os);
  return out;
}

inline HardwareConfig validate_hardware(HardwareConfig config) {
  if (!detail::is_identifier(config.id))
    fail(errc::empty_id, "hardware id must match [A-Za-z0-9_-]+, got '" + config.id + "'");
  if (config.supported_precisions.empty())
    fail(errc::empty_precision_support, "hardware '" + config.id + "' supports no precision");
  return config;
}

inline WorkloadSpec validate_workload(WorkloadSpec workload) {
  if (!detail::is_identifier(workload.id))
    fail(errc::empty_id, "workload id must match [A-Za-z0-9_-]+, got '" + workload.id + "'");
  const bool paired =
      (workload.task == Task::classification && workload.metric_name == MetricName::accuracy) ||
      (workload.task == Task::segmentation && workload.metric_name == MetricName::dice);
  if (!paired)
    fail(errc::workload_metric_mismatch,
         "task " + std::string(to_string(workload.task)) + " does not pair with metric " +
             std::string(to_string(workload.metric_name)));
  for (auto dim : workload.input_shape) {
    if (dim <= 0)
      fail(errc::non_positive_input_shape,
           "input_shape entries must be positive, got " + std::to_string(dim));
  }
  return workload;
}

/// Validated list of hardware platforms with unique ids.
struct HardwareCatalog {
  std::vector<HardwareConfig> configs;

  bool contains(std::string_view id) const {
    for (const auto& c : configs)
      if (c.id == id) return true;
    return false;
  }
};

inline HardwareCatalog make_catalog(std::vector<HardwareConfig> configs) {
  HardwareCatalog catalog;
  for (auto& config : configs) {
    auto validated = validate_hardware(std::move(config));
    if (catalog.contains(validated.id))
      fail(errc::duplicate_config, "duplicate hardware id '" + validated.id + "'");
    catalog.configs.push_back(std::move(validated));
  }
  return catalog;
}

}  // namespace infercost
