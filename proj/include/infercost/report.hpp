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
// Human-readable rendering: comparison tables, decision statements,
// relative-change lines, equivalence-test summaries, and the decision-curve
// SVG. Everything here formats library results; no numeric logic.
// Conventions: money and latency to 2 decimals, percentages to 1 decimal.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infercost/cost.hpp"
#include "infercost/detail/format.hpp"
#include "infercost/errors.hpp"
#include "infercost/stats.hpp"
#include "infercost/types.hpp"

namespace infercost {

enum class ReportFormat { markdown, csv };

inline ReportFormat parse_report_format(std::string_view text) {
  if (text == "md" || text == "markdown") return ReportFormat::markdown;
  if (text == "csv") return ReportFormat::csv;
  fail(errc::invalid_argument, "expected format md or csv, got '" + std::string(text) + "'");
}

/// "v100 fp16 3.34 ms/img $2.88/M", or the infeasibility reason.
inline std::string render_decision(const Decision& decision) {
  if (!decision.is_feasible()) return "infeasible: " + decision.infeasible_reason;
  const auto& candidate = *decision.optimal;
  return candidate.record.config_id + " " + std::string(to_string(candidate.record.precision)) +
         " " + detail::to_fixed(candidate.record.latency_ms_per_img, 2) + " ms/img $" +
         detail::to_fixed(candidate.cost_per_million_usd, 2) + "/M";
}

namespace detail {

struct TableColumn {
  std::string config_id;
  Precision precision = Precision::fp32;

  bool operator<(const TableColumn& other) const {
    if (config_id != other.config_id) return config_id < other.config_id;
    return precision == Precision::fp32 && other.precision == Precision::fp16;
  }
  bool operator==(const TableColumn&) const = default;
};

struct TableRowKey {
  std::string workload_id;
  Os os = Os::linux;

  bool operator<(const TableRowKey& other) const {
    if (workload_id != other.workload_id) return workload_id < other.workload_id;
    return os < other.os;
  }
};

}  // namespace detail

/// Grid mirroring the reference comparison layout: one column per
/// (config, precision), one latency row and one cost row per (workload, os).
/// Every input record lands in exactly one column cell pair.
inline std::string render_table(std::span<const BenchmarkRecord> records,
                                const PricingTable& pricing, ReportFormat format) {
  auto candidates = price_candidates(records, pricing);

  std::vector<detail::TableColumn> columns;
  for (const auto& c : candidates) {
    detail::TableColumn column{c.record.config_id, c.record.precision};
    if (std::find(columns.begin(), columns.end(), column) == columns.end())
      columns.push_back(column);
  }
  std::sort(columns.begin(), columns.end());

  std::map<detail::TableRowKey, std::map<std::size_t, const CostedCandidate*>> rows;
  for (const auto& c : candidates) {
    detail::TableColumn column{c.record.config_id, c.record.precision};
    const auto index = static_cast<std::size_t>(
        std::find(columns.begin(), columns.end(), column) - columns.begin());
    rows[detail::TableRowKey{c.record.workload_id, c.record.os}][index] = &c;
  }

  const bool markdown = format == ReportFormat::markdown;
  const std::string_view time_label = markdown ? "time (ms/img)" : "latency_ms_per_img";
  const std::string_view cost_label = markdown ? "cost ($/M images)" : "cost_usd_per_million";

  std::string out;
  auto emit_row = [&](std::span<const std::string> cells) {
    if (markdown) {
      out += "|";
      for (const auto& cell : cells) {
        out += ' ';
        out += cell;
        out += " |";
      }
    } else {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
    }
    out += '\n';
  };

  std::vector<std::string> header{"workload", "os", "measure"};
  for (const auto& column : columns)
    header.push_back(column.config_id + " " + std::string(to_string(column.precision)));
  emit_row(header);
  if (markdown) {
    std::vector<std::string> rule(header.size(), "---");
    emit_row(rule);
  }

  for (const auto& [key, cells] : rows) {
    std::vector<std::string> time_row{key.workload_id, std::string(to_string(key.os)),
                                      std::string(time_label)};
    std::vector<std::string> cost_row{key.workload_id, std::string(to_string(key.os)),
                                      std::string(cost_label)};
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = cells.find(i);
      if (it == cells.end()) {
        time_row.emplace_back();
        cost_row.emplace_back();
      } else {
        time_row.push_back(detail::to_fixed(it->second->record.latency_ms_per_img, 2));
        cost_row.push_back(detail::to_fixed(it->second->cost_per_million_usd, 2));
      }
    }
    emit_row(time_row);
    emit_row(cost_row);
  }
  return out;
}

/// Record selector for comparisons: "<config>" or "<config>:<precision>".
struct RecordSelector {
  std::string config_id;
  std::optional<Precision> precision;
};

inline RecordSelector parse_selector(std::string_view text) {
  RecordSelector selector;
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    selector.config_id = std::string(text);
  } else {
    selector.config_id = std::string(text.substr(0, colon));
    selector.precision = parse_precision(text.substr(colon + 1));
  }
  if (!detail::is_identifier(selector.config_id))
    fail(errc::invalid_identifier, "selector config must match [A-Za-z0-9_-]+, got '" +
                                       selector.config_id + "'");
  return selector;
}

/// The one record a selector names, or no_match / ambiguous_selector.
inline const BenchmarkRecord& resolve_selector(std::span<const BenchmarkRecord> records,
                                               const RecordSelector& selector) {
  const BenchmarkRecord* found = nullptr;
  for (const auto& record : records) {
    if (record.config_id != selector.config_id) continue;
    if (selector.precision && record.precision != *selector.precision) continue;
    if (found)
      fail(errc::ambiguous_selector, "selector '" + selector.config_id +
                                         "' matches more than one record; add :fp32 or :fp16");
    found = &record;
  }
  if (!found) fail(errc::no_match, "selector '" + selector.config_id + "' matches no record");
  return *found;
}

/// Latency (and, when priced, cost) change of target relative to baseline.
inline std::string render_comparison(const BenchmarkRecord& baseline,
                                     const BenchmarkRecord& target,
                                     const PricingTable* pricing = nullptr) {
  std::string out = "target " + target.config_id + " " +
                    std::string(to_string(target.precision)) + " vs baseline " +
                    baseline.config_id + " " + std::string(to_string(baseline.precision)) + " (" +
                    target.workload_id + "): ";
  out += detail::to_percent(
      relative_change(target.latency_ms_per_img, baseline.latency_ms_per_img));
  out += " latency";
  if (pricing) {
    const auto base = price_candidates(std::span(&baseline, 1), *pricing);
    const auto tgt = price_candidates(std::span(&target, 1), *pricing);
    out += ", ";
    out += detail::to_percent(
        relative_change(tgt.front().cost_per_million_usd, base.front().cost_per_million_usd));
    out += " cost";
  }
  return out;
}

inline std::string render_equivalence(const WilcoxonResult& result) {
  std::string out;
  out += "w_plus=" + detail::to_shortest(result.w_plus) + "\n";
  out += "n_effective=" + std::to_string(result.n_effective) + "\n";
  out += "p_value=" + detail::to_shortest(result.p_value) + "\n";
  out += "method=" + std::string(to_string(result.method)) + "\n";
  if (result.reject_at_alpha) {
    out += "verdict: significant output difference at alpha=" +
           detail::to_shortest(result.alpha) + "\n";
  } else {
    out += "verdict: no significant output difference at alpha=" +
           detail::to_shortest(result.alpha) + "\n";
  }
  return out;
}

inline std::string render_summary(const LatencySummary& summary, std::string_view label) {
  std::string out;
  if (!label.empty()) out += "label=" + std::string(label) + "\n";
  out += "n_used=" + std::to_string(summary.n_used) + "\n";
  out += "n_discarded_warmup=" + std::to_string(summary.n_discarded_warmup) + "\n";
  out += "mean_ms=" + detail::to_fixed(summary.mean_ms, 2) + "\n";
  out += "median_ms=" + detail::to_fixed(summary.median_ms, 2) + "\n";
  out += "stddev_ms=" + detail::to_fixed(summary.stddev_ms, 2) + "\n";
  return out;
}

/// Standalone SVG of the cost-vs-time-limit step function. One horizontal
/// segment per feasible curve segment, shaded band for infeasible regions,
/// axes labeled in ms/img and $/million images.
inline std::string render_curve_svg(const DecisionCurve& curve) {
  constexpr double width = 720.0, height = 440.0;
  constexpr double left = 80.0, right = 30.0, top = 40.0, bottom = 60.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double last_breakpoint = 0.0;
  double max_cost = 0.0;
  for (const auto& segment : curve.segments) {
    if (segment.t_min_ms > last_breakpoint) last_breakpoint = segment.t_min_ms;
    if (std::isfinite(segment.t_max_ms) && segment.t_max_ms > last_breakpoint)
      last_breakpoint = segment.t_max_ms;
    if (segment.decision.is_feasible())
      max_cost = std::max(max_cost, segment.decision.optimal->cost_per_million_usd);
  }
  const double x_max = last_breakpoint > 0.0 ? last_breakpoint * 1.3 : 10.0;
  const double y_max = max_cost > 0.0 ? max_cost * 1.2 : 1.0;
  auto x_of = [&](double t) { return left + std::min(t, x_max) / x_max * plot_w; };
  auto y_of = [&](double cost) { return top + plot_h - cost / y_max * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::to_shortest(width) +
         "\" height=\"" + detail::to_shortest(height) + "\" viewBox=\"0 0 " +
         detail::to_shortest(width) + " " + detail::to_shortest(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + detail::to_fixed(width / 2, 1) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"15\">cost vs inference time limit (" + curve.workload_id + ")</text>\n";

  for (const auto& segment : curve.segments) {
    const double x0 = x_of(segment.t_min_ms);
    const double x1 = x_of(std::isfinite(segment.t_max_ms) ? segment.t_max_ms : x_max);
    if (!segment.decision.is_feasible()) {
      svg += "<rect class=\"infeasible\" x=\"" + detail::to_fixed(x0, 1) + "\" y=\"" +
             detail::to_fixed(top, 1) + "\" width=\"" + detail::to_fixed(x1 - x0, 1) +
             "\" height=\"" + detail::to_fixed(plot_h, 1) + "\" fill=\"#f3d6d2\"/>\n";
      svg += "<text x=\"" + detail::to_fixed((x0 + x1) / 2, 1) + "\" y=\"" +
             detail::to_fixed(top + plot_h / 2, 1) +
             "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#8a3d33\">infeasible</text>\n";
    } else {
      const auto& candidate = *segment.decision.optimal;
      const double y = y_of(candidate.cost_per_million_usd);
      svg += "<line class=\"segment\" x1=\"" + detail::to_fixed(x0, 1) + "\" y1=\"" +
             detail::to_fixed(y, 1) + "\" x2=\"" + detail::to_fixed(x1, 1) + "\" y2=\"" +
             detail::to_fixed(y, 1) + "\" stroke=\"#27647b\" stroke-width=\"3\"/>\n";
      svg += "<text x=\"" + detail::to_fixed((x0 + x1) / 2, 1) + "\" y=\"" +
             detail::to_fixed(y - 8, 1) + "\" text-anchor=\"middle\" font-size=\"12\">" +
             candidate.record.config_id + " " + std::string(to_string(candidate.record.precision)) +
             " $" + detail::to_fixed(candidate.cost_per_million_usd, 2) + "/M</text>\n";
    }
    if (segment.t_min_ms > 0.0) {
      svg += "<line x1=\"" + detail::to_fixed(x0, 1) + "\" y1=\"" + detail::to_fixed(top, 1) +
             "\" x2=\"" + detail::to_fixed(x0, 1) + "\" y2=\"" +
             detail::to_fixed(top + plot_h, 1) +
             "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + detail::to_fixed(x0, 1) + "\" y=\"" +
             detail::to_fixed(top + plot_h + 16, 1) +
             "\" text-anchor=\"middle\" font-size=\"11\">" +
             detail::to_fixed(segment.t_min_ms, 2) + "</text>\n";
    }
  }

  // axes
  svg += "<line x1=\"" + detail::to_fixed(left, 1) + "\" y1=\"" + detail::to_fixed(top, 1) +
         "\" x2=\"" + detail::to_fixed(left, 1) + "\" y2=\"" + detail::to_fixed(top + plot_h, 1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + detail::to_fixed(left, 1) + "\" y1=\"" + detail::to_fixed(top + plot_h, 1) +
         "\" x2=\"" + detail::to_fixed(left + plot_w, 1) + "\" y2=\"" +
         detail::to_fixed(top + plot_h, 1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + detail::to_fixed(left + plot_w / 2, 1) + "\" y=\"" +
         detail::to_fixed(height - 14, 1) +
         "\" text-anchor=\"middle\" font-size=\"13\">inference time limit (ms/img)</text>\n";
  svg += "<text x=\"20\" y=\"" + detail::to_fixed(top + plot_h / 2, 1) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
         detail::to_fixed(top + plot_h / 2, 1) + ")\">inference cost ($/million images)</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace infercost
