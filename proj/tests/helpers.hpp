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

#include <catch2/catch.hpp>

#include <string>
#include <vector>

#include "infercost/infercost.hpp"

namespace testutil {

using namespace infercost;

inline BenchmarkRecord record(std::string workload, std::string config, Precision precision,
                              Os os, double latency, double metric = 0.95,
                              std::int64_t samples = 1000) {
  BenchmarkRecord r;
  r.workload_id = std::move(workload);
  r.config_id = std::move(config);
  r.precision = precision;
  r.os = os;
  r.latency_ms_per_img = latency;
  r.metric_score = metric;
  r.samples = samples;
  return r;
}

// Reference classification measurements used as fixtures everywhere.
inline std::vector<BenchmarkRecord> inceptionv3_records() {
  return {
      record("inceptionv3", "k80", Precision::fp32, Os::linux, 17.77, 0.95),
      record("inceptionv3", "v100", Precision::fp32, Os::linux, 4.69, 0.95),
      record("inceptionv3", "v100", Precision::fp16, Os::linux, 3.34, 0.94),
      record("inceptionv3", "xeon", Precision::fp32, Os::linux, 19.49, 0.95),
  };
}

inline std::vector<BenchmarkRecord> unet_records() {
  return {
      record("unet", "k80", Precision::fp32, Os::linux, 7.73, 0.91, 40),
      record("unet", "v100", Precision::fp32, Os::linux, 1.65, 0.91, 40),
      record("unet", "v100", Precision::fp16, Os::linux, 1.34, 0.91, 40),
      record("unet", "xeon", Precision::fp32, Os::linux, 16.14, 0.91, 40),
  };
}

// Hourly rates back-solved from the reference cost cells.
inline PricingTable fixture_pricing() {
  PricingTable pricing;
  pricing.rates["k80"] = MoneyRate{0.90};
  pricing.rates["v100"] = MoneyRate{3.10};
  pricing.rates["xeon"] = MoneyRate{0.305};
  return pricing;
}

template <class Fn>
void require_error(Fn&& fn, errc expected) {
  try {
    std::forward<Fn>(fn)();
  } catch (const Error& e) {
    INFO(e.what());
    REQUIRE(e.code() == expected);
    return;
  }
  FAIL("expected error " << to_string(expected));
}

}  // namespace testutil
