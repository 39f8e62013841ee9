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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace infercost {

/// Error codes for every failure the library reports. The CLI maps any of
/// these to exit status 1; an infeasible decision is not an error.
enum class errc {
  // record and constraint validation
  non_positive_latency,
  metric_out_of_range,
  unknown_precision,
  unknown_os,
  duplicate_key,
  invalid_identifier,
  non_positive_samples,
  negative_latency_bound,
  empty_precision_set,
  // catalog validation
  empty_id,
  duplicate_config,
  empty_precision_support,
  workload_metric_mismatch,
  non_positive_input_shape,
  // ingest
  empty_quote_list,
  negative_rate,
  unknown_config,
  malformed_header,
  malformed_row,
  malformed_json,
  warmup_exceeds_length,
  duplicate_id,
  empty_pairs,
  length_mismatch,
  // cost engine
  non_finite_input,
  missing_price,
  empty_record_set,
  zero_baseline,
  empty_list,
  invalid_constraints,
  mixed_workloads,
  // stats
  no_post_warmup_samples,
  invalid_alpha,
  n_too_large,
  // harness
  negative_delay,
  backend_failure,
  invalid_trial_plan,
  bad_backend_spec,
  // report / cli
  ambiguous_selector,
  no_match,
  io_error,
  invalid_argument,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::non_positive_latency: return "non_positive_latency";
    case errc::metric_out_of_range: return "metric_out_of_range";
    case errc::unknown_precision: return "unknown_precision";
    case errc::unknown_os: return "unknown_os";
    case errc::duplicate_key: return "duplicate_key";
    case errc::invalid_identifier: return "invalid_identifier";
    case errc::non_positive_samples: return "non_positive_samples";
    case errc::negative_latency_bound: return "negative_latency_bound";
    case errc::empty_precision_set: return "empty_precision_set";
    case errc::empty_id: return "empty_id";
    case errc::duplicate_config: return "duplicate_config";
    case errc::empty_precision_support: return "empty_precision_support";
    case errc::workload_metric_mismatch: return "workload_metric_mismatch";
    case errc::non_positive_input_shape: return "non_positive_input_shape";
    case errc::empty_quote_list: return "empty_quote_list";
    case errc::negative_rate: return "negative_rate";
    case errc::unknown_config: return "unknown_config";
    case errc::malformed_header: return "malformed_header";
    case errc::malformed_row: return "malformed_row";
    case errc::malformed_json: return "malformed_json";
    case errc::warmup_exceeds_length: return "warmup_exceeds_length";
    case errc::duplicate_id: return "duplicate_id";
    case errc::empty_pairs: return "empty_pairs";
    case errc::length_mismatch: return "length_mismatch";
    case errc::non_finite_input: return "non_finite_input";
    case errc::missing_price: return "missing_price";
    case errc::empty_record_set: return "empty_record_set";
    case errc::zero_baseline: return "zero_baseline";
    case errc::empty_list: return "empty_list";
    case errc::invalid_constraints: return "invalid_constraints";
    case errc::mixed_workloads: return "mixed_workloads";
    case errc::no_post_warmup_samples: return "no_post_warmup_samples";
    case errc::invalid_alpha: return "invalid_alpha";
    case errc::n_too_large: return "n_too_large";
    case errc::negative_delay: return "negative_delay";
    case errc::backend_failure: return "backend_failure";
    case errc::invalid_trial_plan: return "invalid_trial_plan";
    case errc::bad_backend_spec: return "bad_backend_spec";
    case errc::ambiguous_selector: return "ambiguous_selector";
    case errc::no_match: return "no_match";
    case errc::io_error: return "io_error";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown_error";
}

/// Exception carrying a stable error code plus a human-readable detail
/// message. what() is "<code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(errc code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(errc code, std::string detail) {
  throw Error(code, std::move(detail));
}

}  // namespace infercost
