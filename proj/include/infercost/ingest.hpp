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
// File ingestion and pricing aggregation. All interchange formats are
// fixed: CSV with comma separator, '.' decimal point, mandatory header,
// UTF-8, identifiers restricted to [A-Za-z0-9_-] so no quoting is needed.
// Writers emit the canonical form (shortest round-tripping numbers), so
// parse -> write -> parse is the identity on canonical files.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "infercost/detail/format.hpp"
#include "infercost/errors.hpp"
#include "infercost/types.hpp"

namespace infercost {

/// One provider's hourly price quote for a hardware configuration.
struct PricingQuote {
  std::string provider;
  std::string config_id;
  MoneyRate rate;

  bool operator==(const PricingQuote&) const = default;
};

/// config_id -> averaged hourly rate.
struct PricingTable {
  std::map<std::string, MoneyRate, std::less<>> rates;

  std::optional<MoneyRate> find(std::string_view config_id) const {
    auto it = rates.find(config_id);
    if (it == rates.end()) return std::nullopt;
    return it->second;
  }
};

/// Raw per-iteration latencies. The first `warmup_count` samples are kept in
/// the data but flagged; discarding happens in summarize(), not here.
struct MeasurementSeries {
  std::vector<double> latencies_ms;
  std::size_t warmup_count = 0;
  std::string label;

  std::size_t post_warmup_count() const {
    return latencies_ms.size() > warmup_count ? latencies_ms.size() - warmup_count : 0;
  }
};

/// Aligned per-input outputs from two runs of the same model.
struct PairedOutputs {
  std::vector<std::string> ids;
  std::vector<double> side_a;
  std::vector<double> side_b;

  std::size_t size() const { return ids.size(); }
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

inline double require_double(std::string_view field, std::size_t line_no, std::string_view name) {
  auto value = parse_double(field);
  if (!value)
    fail(errc::malformed_row, "line " + std::to_string(line_no) + ": " + std::string(name) +
                                  " is not a number: '" + std::string(field) + "'");
  return *value;
}

inline std::int64_t require_int(std::string_view field, std::size_t line_no,
                                std::string_view name) {
  auto value = parse_int(field);
  if (!value)
    fail(errc::malformed_row, "line " + std::to_string(line_no) + ": " + std::string(name) +
                                  " is not an integer: '" + std::string(field) + "'");
  return *value;
}

inline void require_header(std::span<const std::string_view> lines, std::string_view expected) {
  if (lines.empty() || lines.front() != expected)
    fail(errc::malformed_header, "expected header '" + std::string(expected) + "'");
}

inline void require_arity(std::size_t got, std::size_t want, std::size_t line_no) {
  if (got != want)
    fail(errc::malformed_row, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(want) + " fields, got " + std::to_string(got));
}

}  // namespace detail

inline constexpr std::string_view records_csv_header =
    "workload,config,precision,os,latency_ms_per_img,metric,samples";
inline constexpr std::string_view timing_csv_header = "iteration,latency_ms";
inline constexpr std::string_view pairs_csv_header = "id,output_a,output_b";

/// Unweighted arithmetic mean of all quotes per config_id. When a catalog is
/// supplied, every quoted config must exist in it; without one, pricing-only
/// workflows may quote unknown hardware.
inline PricingTable average_pricing(std::span<const PricingQuote> quotes,
                                    const HardwareCatalog* catalog = nullptr) {
  if (quotes.empty()) fail(errc::empty_quote_list, "no pricing quotes supplied");
  struct Accumulator {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, Accumulator, std::less<>> by_config;
  for (const auto& quote : quotes) {
    if (quote.provider.empty())
      fail(errc::invalid_identifier, "quote has empty provider");
    if (!detail::is_identifier(quote.config_id))
      fail(errc::invalid_identifier,
           "quote config must match [A-Za-z0-9_-]+, got '" + quote.config_id + "'");
    if (!std::isfinite(quote.rate.usd_per_hour) || quote.rate.usd_per_hour < 0.0)
      fail(errc::negative_rate, "quote for '" + quote.config_id + "' has rate " +
                                    detail::to_shortest(quote.rate.usd_per_hour));
    if (catalog && !catalog->contains(quote.config_id))
      fail(errc::unknown_config, "quoted config '" + quote.config_id + "' is not in the catalog");
    auto& acc = by_config[quote.config_id];
    acc.sum += quote.rate.usd_per_hour;
    acc.count += 1;
  }
  PricingTable table;
  for (const auto& [config_id, acc] : by_config)
    table.rates[config_id] = MoneyRate{acc.sum / static_cast<double>(acc.count)};
  return table;
}

inline std::vector<BenchmarkRecord> parse_records_csv(std::string_view text) {
  auto lines = detail::split_lines(text);
  detail::require_header(lines, records_csv_header);
  std::vector<BenchmarkRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    auto fields = detail::split_fields(lines[i]);
    detail::require_arity(fields.size(), 7, line_no);
    RawRecord raw;
    raw.workload = std::string(fields[0]);
    raw.config = std::string(fields[1]);
    raw.precision = std::string(fields[2]);
    raw.os = std::string(fields[3]);
    raw.latency_ms_per_img = detail::require_double(fields[4], line_no, "latency_ms_per_img");
    raw.metric_score = detail::require_double(fields[5], line_no, "metric");
    raw.samples = detail::require_int(fields[6], line_no, "samples");
    try {
      records.push_back(validate_record(raw));
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  check_unique_keys(records);
  return records;
}

inline std::string write_records_csv(std::span<const BenchmarkRecord> records) {
  std::string out{records_csv_header};
  out += '\n';
  for (const auto& r : records) {
    out += r.workload_id;
    out += ',';
    out += r.config_id;
    out += ',';
    out += to_string(r.precision);
    out += ',';
    out += to_string(r.os);
    out += ',';
    out += detail::to_shortest(r.latency_ms_per_img);
    out += ',';
    out += detail::to_shortest(r.metric_score);
    out += ',';
    out += std::to_string(r.samples);
    out += '\n';
  }
  return out;
}

inline MeasurementSeries parse_timing_csv(std::string_view text, std::size_t warmup) {
  auto lines = detail::split_lines(text);
  detail::require_header(lines, timing_csv_header);
  MeasurementSeries series;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    auto fields = detail::split_fields(lines[i]);
    detail::require_arity(fields.size(), 2, line_no);
    detail::require_int(fields[0], line_no, "iteration");
    const double latency = detail::require_double(fields[1], line_no, "latency_ms");
    if (!detail::strictly_positive(latency))
      fail(errc::non_positive_latency, "line " + std::to_string(line_no) +
                                           ": latency_ms must be > 0, got " +
                                           detail::to_shortest(latency));
    series.latencies_ms.push_back(latency);
  }
  if (warmup >= series.latencies_ms.size())
    fail(errc::warmup_exceeds_length,
         "warmup " + std::to_string(warmup) + " leaves no samples out of " +
             std::to_string(series.latencies_ms.size()));
  series.warmup_count = warmup;
  return series;
}

inline std::string write_timing_csv(const MeasurementSeries& series) {
  std::string out{timing_csv_header};
  out += '\n';
  for (std::size_t i = 0; i < series.latencies_ms.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += detail::to_shortest(series.latencies_ms[i]);
    out += '\n';
  }
  return out;
}

inline PairedOutputs parse_pairs_csv(std::string_view text) {
  auto lines = detail::split_lines(text);
  detail::require_header(lines, pairs_csv_header);
  PairedOutputs pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    auto fields = detail::split_fields(lines[i]);
    detail::require_arity(fields.size(), 3, line_no);
    if (!detail::is_identifier(fields[0]))
      fail(errc::invalid_identifier, "line " + std::to_string(line_no) +
                                         ": id must match [A-Za-z0-9_-]+, got '" +
                                         std::string(fields[0]) + "'");
    for (const auto& seen : pairs.ids) {
      if (seen == fields[0])
        fail(errc::duplicate_id,
             "line " + std::to_string(line_no) + ": duplicate id '" + seen + "'");
    }
    pairs.ids.emplace_back(fields[0]);
    pairs.side_a.push_back(detail::require_double(fields[1], line_no, "output_a"));
    pairs.side_b.push_back(detail::require_double(fields[2], line_no, "output_b"));
  }
  if (pairs.ids.empty()) fail(errc::empty_pairs, "pairs file has no data rows");
  return pairs;
}

inline std::string write_pairs_csv(const PairedOutputs& pairs) {
  std::string out{pairs_csv_header};
  out += '\n';
  for (std::size_t i = 0; i < pairs.ids.size(); ++i) {
    out += pairs.ids[i];
    out += ',';
    out += detail::to_shortest(pairs.side_a[i]);
    out += ',';
    out += detail::to_shortest(pairs.side_b[i]);
    out += '\n';
  }
  return out;
}

/// Pricing file: {"quotes":[{"provider":"...","config":"...","usd_per_hour":3.06},...]}
inline std::vector<PricingQuote> parse_pricing_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::malformed_json, e.what());
  }
  if (!doc.is_object() || !doc.contains("quotes") || !doc["quotes"].is_array())
    fail(errc::malformed_json, "expected an object with a 'quotes' array");
  std::vector<PricingQuote> quotes;
  for (const auto& entry : doc["quotes"]) {
    if (!entry.is_object() || !entry.contains("provider") || !entry.contains("config") ||
        !entry.contains("usd_per_hour") || !entry["provider"].is_string() ||
        !entry["config"].is_string() || !entry["usd_per_hour"].is_number())
      fail(errc::malformed_json,
           "each quote needs string 'provider', string 'config', number 'usd_per_hour'");
    quotes.push_back(PricingQuote{entry["provider"].get<std::string>(),
                                  entry["config"].get<std::string>(),
                                  MoneyRate{entry["usd_per_hour"].get<double>()}});
  }
  return quotes;
}

inline std::string write_pricing_json(std::span<const PricingQuote> quotes) {
  nlohmann::ordered_json doc;
  doc["quotes"] = nlohmann::ordered_json::array();
  for (const auto& q : quotes) {
    doc["quotes"].push_back({{"provider", q.provider},
                             {"config", q.config_id},
                             {"usd_per_hour", q.rate.usd_per_hour}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace infercost
