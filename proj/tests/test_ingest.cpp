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

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace infercost;
using testutil::require_error;

TEST_CASE("average_pricing takes the arithmetic mean per config") {
  const std::vector<PricingQuote> quotes = {
      {"cloud-a", "v100", MoneyRate{3.06}},
      {"cloud-b", "v100", MoneyRate{3.14}},
  };
  const auto table = average_pricing(quotes);
  REQUIRE(table.find("v100"));
  CHECK(table.find("v100")->usd_per_hour == Approx(3.10).epsilon(1e-9));
}

TEST_CASE("average_pricing single quote is the identity") {
  const std::vector<PricingQuote> quotes = {{"cloud-a", "k80", MoneyRate{0.90}}};
  const auto table = average_pricing(quotes);
  REQUIRE(table.find("k80"));
  CHECK(table.find("k80")->usd_per_hour == 0.90);
  CHECK_FALSE(table.find("v100"));
}

TEST_CASE("average_pricing error paths") {
  require_error([] { average_pricing(std::vector<PricingQuote>{}); }, errc::empty_quote_list);

  const std::vector<PricingQuote> negative = {{"cloud-a", "k80", MoneyRate{-0.1}}};
  require_error([&] { average_pricing(negative); }, errc::negative_rate);

  const std::vector<PricingQuote> anonymous = {{"", "k80", MoneyRate{0.9}}};
  require_error([&] { average_pricing(anonymous); }, errc::invalid_identifier);
}

TEST_CASE("average_pricing checks configs against a catalog only when given") {
  HardwareConfig k80;
  k80.id = "k80";
  k80.kind = HardwareKind::gpu;
  k80.supported_precisions = {Precision::fp32};
  const auto catalog = make_catalog({k80});

  const std::vector<PricingQuote> quotes = {{"cloud-a", "tpu-v9", MoneyRate{12.0}}};
  CHECK_NOTHROW(average_pricing(quotes));  // pricing-only workflow
  require_error([&] { average_pricing(quotes, &catalog); }, errc::unknown_config);
}

TEST_CASE("average_pricing properties") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rate(0.0, 40.0);
  const std::vector<std::string> configs = {"k80", "v100", "xeon", "a10", "t4"};

  SECTION("permutation invariance") {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<PricingQuote> quotes;
      const std::size_t n = 1 + rng() % 12;
      for (std::size_t i = 0; i < n; ++i)
        quotes.push_back({"p" + std::to_string(i), configs[rng() % configs.size()],
                          MoneyRate{rate(rng)}});
      auto shuffled = quotes;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);

      const auto a = average_pricing(quotes);
      const auto b = average_pricing(shuffled);
      REQUIRE(a.rates.size() == b.rates.size());
      for (const auto& [config, money] : a.rates) {
        REQUIRE(b.find(config));
        REQUIRE(b.find(config)->usd_per_hour ==
                Approx(money.usd_per_hour).epsilon(1e-9).margin(1e-12));
      }
    }
  }

  SECTION("k copies of one quote equal the single quote") {
    for (int k = 1; k <= 8; ++k) {
      std::vector<PricingQuote> quotes(static_cast<std::size_t>(k),
                                       PricingQuote{"cloud-a", "v100", MoneyRate{3.1}});
      const auto table = average_pricing(quotes);
      REQUIRE(table.find("v100"));
      CHECK(table.find("v100")->usd_per_hour == Approx(3.1).epsilon(1e-9));
    }
  }
}

TEST_CASE("parse_records_csv reads a reference row") {
  const std::string text =
      "workload,config,precision,os,latency_ms_per_img,metric,samples\n"
      "inceptionv3,v100,fp16,linux,3.34,0.94,1000\n";
  const auto records = parse_records_csv(text);
  REQUIRE(records.size() == 1);
  CHECK(records[0].latency_ms_per_img == 3.34);
  CHECK(records[0].precision == Precision::fp16);
  CHECK(records[0].metric_score == 0.94);
}

TEST_CASE("parse_records_csv error paths") {
  SECTION("header only yields empty list") {
    CHECK(parse_records_csv("workload,config,precision,os,latency_ms_per_img,metric,samples\n")
              .empty());
  }
  SECTION("wrong header") {
    require_error([] { parse_records_csv("a,b,c\n"); }, errc::malformed_header);
  }
  SECTION("six columns") {
    const std::string text =
        "workload,config,precision,os,latency_ms_per_img,metric,samples\n"
        "inceptionv3,v100,fp16,linux,3.34,0.94\n";
    try {
      parse_records_csv(text);
      FAIL("expected malformed_row");
    } catch (const Error& e) {
      CHECK(e.code() == errc::malformed_row);
      CHECK(e.detail().find("line 2") != std::string::npos);
    }
  }
  SECTION("non-numeric latency") {
    const std::string text =
        "workload,config,precision,os,latency_ms_per_img,metric,samples\n"
        "inceptionv3,v100,fp16,linux,fast,0.94,1000\n";
    require_error([&] { parse_records_csv(text); }, errc::malformed_row);
  }
  SECTION("validation errors carry the line number") {
    const std::string text =
        "workload,config,precision,os,latency_ms_per_img,metric,samples\n"
        "inceptionv3,v100,fp16,linux,3.34,0.94,1000\n"
        "inceptionv3,v100,fp16,linux,0,0.94,1000\n";
    try {
      parse_records_csv(text);
      FAIL("expected non_positive_latency");
    } catch (const Error& e) {
      CHECK(e.code() == errc::non_positive_latency);
      CHECK(e.detail().find("line 3") != std::string::npos);
    }
  }
  SECTION("duplicate keys across rows") {
    const std::string text =
        "workload,config,precision,os,latency_ms_per_img,metric,samples\n"
        "inceptionv3,v100,fp16,linux,3.34,0.94,1000\n"
        "inceptionv3,v100,fp16,linux,3.30,0.94,1000\n";
    require_error([&] { parse_records_csv(text); }, errc::duplicate_key);
  }
}

TEST_CASE("records CSV round-trips") {
  const auto records = testutil::inceptionv3_records();
  const auto text = write_records_csv(records);
  CHECK(parse_records_csv(text) == records);
  CHECK(write_records_csv(parse_records_csv(text)) == text);
}

TEST_CASE("records CSV round-trip property on random valid records") {
  std::mt19937_64 rng(20260808);
  std::uniform_real_distribution<double> latency(1e-3, 500.0);
  std::uniform_real_distribution<double> metric(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BenchmarkRecord> records;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      records.push_back(testutil::record(
          "w" + std::to_string(trial), "cfg" + std::to_string(i),
          rng() % 2 ? Precision::fp32 : Precision::fp16, rng() % 2 ? Os::linux : Os::windows,
          latency(rng), metric(rng), static_cast<std::int64_t>(1 + rng() % 100000)));
    }
    const auto text = write_records_csv(records);
    REQUIRE(parse_records_csv(text) == records);
  }
}

TEST_CASE("parse_timing_csv") {
  const std::string text = "iteration,latency_ms\n1,5.0\n2,5.2\n3,4.8\n";

  SECTION("preserves order and takes warmup from the argument") {
    const auto series = parse_timing_csv(text, 1);
    CHECK(series.latencies_ms == std::vector<double>{5.0, 5.2, 4.8});
    CHECK(series.warmup_count == 1);
    CHECK(series.post_warmup_count() == 2);
  }
  SECTION("warmup covering every sample") {
    require_error([&] { parse_timing_csv(text, 3); }, errc::warmup_exceeds_length);
  }
  SECTION("non-positive latency") {
    require_error([] { parse_timing_csv("iteration,latency_ms\n1,5.0\n2,-1.0\n", 0); },
                  errc::non_positive_latency);
  }
  SECTION("wrong header") {
    require_error([] { parse_timing_csv("lat\n", 0); }, errc::malformed_header);
  }
  SECTION("round-trip") {
    const auto series = parse_timing_csv(text, 1);
    CHECK(parse_timing_csv(write_timing_csv(series), 1).latencies_ms == series.latencies_ms);
    const auto canonical = write_timing_csv(series);
    CHECK(write_timing_csv(parse_timing_csv(canonical, 1)) == canonical);
  }
}

TEST_CASE("parse_pairs_csv") {
  const std::string text = "id,output_a,output_b\nimg1,0.91,0.91\nimg2,0.88,0.87\n";

  SECTION("aligned vectors") {
    const auto pairs = parse_pairs_csv(text);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs.ids == std::vector<std::string>{"img1", "img2"});
    CHECK(pairs.side_a == std::vector<double>{0.91, 0.88});
    CHECK(pairs.side_b == std::vector<double>{0.91, 0.87});
  }
  SECTION("duplicate id") {
    require_error(
        [] { parse_pairs_csv("id,output_a,output_b\nimg1,0.9,0.9\nimg1,0.8,0.8\n"); },
        errc::duplicate_id);
  }
  SECTION("a test needs at least one pair") {
    require_error([] { parse_pairs_csv("id,output_a,output_b\n"); }, errc::empty_pairs);
  }
  SECTION("round-trip") {
    const auto pairs = parse_pairs_csv(text);
    CHECK(write_pairs_csv(pairs) == text);
  }
}

TEST_CASE("parsers reject arbitrary garbage with a typed error, never a crash") {
  std::mt19937_64 rng(20260809);
  const std::string alphabet = "abz019_-,.\n\r \t\"{}[]:e+";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const std::size_t len = rng() % 120;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    try {
      parse_records_csv(text);
    } catch (const Error&) {
    }
    try {
      parse_timing_csv(text, rng() % 4);
    } catch (const Error&) {
    }
    try {
      parse_pairs_csv(text);
    } catch (const Error&) {
    }
    try {
      parse_pricing_json(text);
    } catch (const Error&) {
    }
  }
  SUCCEED("no parser escaped the Error contract");
}

TEST_CASE("pricing JSON") {
  const std::string text =
      "{\"quotes\":[{\"provider\":\"cloud-a\",\"config\":\"v100\",\"usd_per_hour\":3.06},"
      "{\"provider\":\"cloud-b\",\"config\":\"v100\",\"usd_per_hour\":3.14}]}";

  SECTION("parses quotes in order") {
    const auto quotes = parse_pricing_json(text);
    REQUIRE(quotes.size() == 2);
    CHECK(quotes[0].provider == "cloud-a");
    CHECK(quotes[1].rate.usd_per_hour == 3.14);
  }
  SECTION("rejects broken JSON") {
    require_error([] { parse_pricing_json("{\"quotes\":"); }, errc::malformed_json);
  }
  SECTION("rejects missing quotes array") {
    require_error([] { parse_pricing_json("{}"); }, errc::malformed_json);
  }
  SECTION("rejects wrong field types") {
    require_error(
        [] { parse_pricing_json("{\"quotes\":[{\"provider\":1,\"config\":\"x\",\"usd_per_hour\":1}]}"); },
        errc::malformed_json);
  }
  SECTION("round-trip") {
    const auto quotes = parse_pricing_json(text);
    CHECK(parse_pricing_json(write_pricing_json(quotes)) == quotes);
    const auto canonical = write_pricing_json(quotes);
    CHECK(write_pricing_json(parse_pricing_json(canonical)) == canonical);
  }
}
