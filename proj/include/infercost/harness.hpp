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
// Trial runner for timed inference benchmarks. Inputs are generated from a
// seeded PRNG outside the timed region; only the backend invocation is
// measured, on a monotonic clock, strictly sequentially on one thread.
// Real accelerator backends are adapters to be supplied externally; the
// synthetic backends here simulate known ground-truth delays for testing.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infercost/detail/format.hpp"
#include "infercost/errors.hpp"
#include "infercost/ingest.hpp"

namespace infercost {

/// A runnable model on some hardware. setup() is one-time; after it,
/// repeated run() calls must be valid. run() is the only timed operation.
class InferenceBackend {
 public:
  virtual ~InferenceBackend() = default;
  virtual std::string label() const = 0;
  virtual void setup() = 0;
  virtual std::vector<std::byte> run(std::span<const std::byte> input) = 0;
};

/// Builds one randomized input buffer per iteration. Runs outside the timed
/// region.
using InputGenerator =
    std::function<std::vector<std::byte>(std::int64_t iteration, std::mt19937_64& rng)>;

struct TrialPlan {
  std::int64_t iterations = 5000;  // "several thousand", with a conservative warmup
  std::int64_t warmup = 200;
  std::uint64_t seed = 0;
  std::size_t input_bytes = 64;
  InputGenerator input_generator;  // defaults to input_bytes of random data
};

struct SyntheticBackendSpec {
  enum class Kind { constant, cold_start, noisy };
  Kind kind = Kind::constant;
  double delay_ms = 0.0;                    // constant
  double slow_ms = 0.0, fast_ms = 0.0;      // cold_start
  std::int64_t slow_count = 0;              // cold_start
  double mean_ms = 0.0, jitter_ms = 0.0;    // noisy

  static SyntheticBackendSpec constant(double delay_ms) {
    SyntheticBackendSpec spec;
    spec.kind = Kind::constant;
    spec.delay_ms = delay_ms;
    return spec;
  }
  static SyntheticBackendSpec cold_start(double slow_ms, double fast_ms, std::int64_t slow_count) {
    SyntheticBackendSpec spec;
    spec.kind = Kind::cold_start;
    spec.slow_ms = slow_ms;
    spec.fast_ms = fast_ms;
    spec.slow_count = slow_count;
    return spec;
  }
  static SyntheticBackendSpec noisy(double mean_ms, double jitter_ms) {
    SyntheticBackendSpec spec;
    spec.kind = Kind::noisy;
    spec.mean_ms = mean_ms;
    spec.jitter_ms = jitter_ms;
    return spec;
  }
};

namespace detail {

inline void validate_spec(const SyntheticBackendSpec& spec) {
  using Kind = SyntheticBackendSpec::Kind;
  switch (spec.kind) {
    case Kind::constant:
      if (spec.delay_ms < 0.0) fail(errc::negative_delay, "constant delay must be >= 0");
      break;
    case Kind::cold_start:
      if (spec.slow_ms < 0.0 || spec.fast_ms < 0.0)
        fail(errc::negative_delay, "cold_start delays must be >= 0");
      if (spec.slow_count < 0) fail(errc::negative_delay, "slow_count must be >= 0");
      break;
    case Kind::noisy:
      if (spec.mean_ms < 0.0 || spec.jitter_ms < 0.0)
        fail(errc::negative_delay, "noisy delays must be >= 0");
      break;
  }
}

// Busy-wait on the monotonic clock; sleep granularity is far too coarse for
// millisecond ground truths.
inline void spin_for_ms(double ms) {
  if (ms <= 0.0) return;
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double, std::milli>(ms));
  while (std::chrono::steady_clock::now() < deadline) {
  }
}

inline constexpr std::uint64_t fnv_offset = 1469598103934665603ULL;
inline constexpr std::uint64_t fnv_prime = 1099511628211ULL;

inline std::uint64_t fnv1a(std::uint64_t hash, std::span<const std::byte> data) {
  for (std::byte b : data) {
    hash ^= static_cast<std::uint64_t>(b);
    hash *= fnv_prime;
  }
  return hash;
}

}  // namespace detail

/// Test double for real hardware: simulates a configured delay profile.
/// Keeps a checksum of every input it saw and the exact delay sequence it
/// drew, so determinism and warmup behavior are observable.
class SyntheticBackend final : public InferenceBackend {
 public:
  SyntheticBackend(const SyntheticBackendSpec& spec, std::uint64_t seed)
      : spec_(spec), rng_(seed) {
    detail::validate_spec(spec_);
  }

  std::string label() const override;

  void setup() override { ready_ = true; }

  std::vector<std::byte> run(std::span<const std::byte> input) override {
    if (!ready_) fail(errc::backend_failure, "backend used before setup()");
    checksum_ = detail::fnv1a(checksum_, input);
    const double delay = next_delay_ms();
    delays_ms_.push_back(delay);
    detail::spin_for_ms(delay);
    std::vector<std::byte> output(sizeof(checksum_));
    std::uint64_t c = checksum_;
    for (auto& b : output) {
      b = static_cast<std::byte>(c & 0xff);
      c >>= 8;
    }
    return output;
  }

  std::uint64_t input_checksum() const { return checksum_; }
  const std::vector<double>& simulated_delays_ms() const { return delays_ms_; }

 private:
  double next_delay_ms() {
    using Kind = SyntheticBackendSpec::Kind;
    switch (spec_.kind) {
      case Kind::constant:
        return spec_.delay_ms;
      case Kind::cold_start:
        return calls_++ < spec_.slow_count ? spec_.slow_ms : spec_.fast_ms;
      case Kind::noisy: {
        std::uniform_real_distribution<double> jitter(-spec_.jitter_ms, spec_.jitter_ms);
        return std::max(0.0, spec_.mean_ms + jitter(rng_));
      }
    }
    return 0.0;
  }

  SyntheticBackendSpec spec_;
  std::mt19937_64 rng_;
  bool ready_ = false;
  std::int64_t calls_ = 0;
  std::uint64_t checksum_ = detail::fnv_offset;
  std::vector<double> delays_ms_;
};

inline std::unique_ptr<SyntheticBackend> make_synthetic(const SyntheticBackendSpec& spec,
                                                        std::uint64_t seed) {
  return std::make_unique<SyntheticBackend>(spec, seed);
}

/// CLI grammar: synthetic:const:<ms> | synthetic:cold:<slow>:<fast>:<count>
/// | synthetic:noisy:<mean>:<jitter>
inline SyntheticBackendSpec parse_backend_spec(std::string_view text) {
  constexpr std::string_view grammar =
      "expected synthetic:const:<ms>, synthetic:cold:<slow>:<fast>:<count>, "
      "or synthetic:noisy:<mean>:<jitter>";
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() < 2 || parts[0] != "synthetic")
    fail(errc::bad_backend_spec, std::string(grammar) + "; got '" + std::string(text) + "'");
  auto number = [&](std::string_view field) {
    auto value = detail::parse_double(field);
    if (!value)
      fail(errc::bad_backend_spec,
           "'" + std::string(field) + "' is not a number; " + std::string(grammar));
    return *value;
  };
  SyntheticBackendSpec spec;
  if (parts[1] == "const" && parts.size() == 3) {
    spec = SyntheticBackendSpec::constant(number(parts[2]));
  } else if (parts[1] == "cold" && parts.size() == 5) {
    auto count = detail::parse_int(parts[4]);
    if (!count)
      fail(errc::bad_backend_spec,
           "'" + std::string(parts[4]) + "' is not an integer; " + std::string(grammar));
    spec = SyntheticBackendSpec::cold_start(number(parts[2]), number(parts[3]), *count);
  } else if (parts[1] == "noisy" && parts.size() == 4) {
    spec = SyntheticBackendSpec::noisy(number(parts[2]), number(parts[3]));
  } else {
    fail(errc::bad_backend_spec, std::string(grammar) + "; got '" + std::string(text) + "'");
  }
  detail::validate_spec(spec);
  return spec;
}

inline std::string format_backend_spec(const SyntheticBackendSpec& spec) {
  using Kind = SyntheticBackendSpec::Kind;
  switch (spec.kind) {
    case Kind::constant:
      return "synthetic:const:" + detail::to_shortest(spec.delay_ms);
    case Kind::cold_start:
      return "synthetic:cold:" + detail::to_shortest(spec.slow_ms) + ":" +
             detail::to_shortest(spec.fast_ms) + ":" + std::to_string(spec.slow_count);
    case Kind::noisy:
      return "synthetic:noisy:" + detail::to_shortest(spec.mean_ms) + ":" +
             detail::to_shortest(spec.jitter_ms);
  }
  return "synthetic";
}

inline std::string SyntheticBackend::label() const { return format_backend_spec(spec_); }

/// Run `plan.iterations` sequential invocations. Every iteration is
/// recorded, warmup included (discard happens in summarize); input
/// generation stays outside the timed region.
inline MeasurementSeries run_trial(InferenceBackend& backend, const TrialPlan& plan) {
  if (plan.iterations <= 0)
    fail(errc::invalid_trial_plan, "iterations must be > 0, got " + std::to_string(plan.iterations));
  if (plan.warmup < 0)
    fail(errc::invalid_trial_plan, "warmup must be >= 0, got " + std::to_string(plan.warmup));
  if (plan.warmup >= plan.iterations)
    fail(errc::warmup_exceeds_length, "warmup " + std::to_string(plan.warmup) +
                                          " leaves no samples out of " +
                                          std::to_string(plan.iterations));

  std::mt19937_64 rng(plan.seed);
  const InputGenerator& generate =
      plan.input_generator
          ? plan.input_generator
          : InputGenerator([n = plan.input_bytes](std::int64_t, std::mt19937_64& r) {
              std::vector<std::byte> input(n);
              for (auto& b : input) b = static_cast<std::byte>(r() & 0xff);
              return input;
            });

  MeasurementSeries series;
  series.latencies_ms.reserve(static_cast<std::size_t>(plan.iterations));
  series.warmup_count = static_cast<std::size_t>(plan.warmup);
  series.label = backend.label();
  for (std::int64_t i = 0; i < plan.iterations; ++i) {
    const auto input = generate(i, rng);
    try {
      const auto t0 = std::chrono::steady_clock::now();
      backend.run(input);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      series.latencies_ms.push_back(std::max(ms, 1e-6));  // clock granularity floor
    } catch (const Error& e) {
      fail(errc::backend_failure, "iteration " + std::to_string(i) + ": " + e.detail());
    } catch (const std::exception& e) {
      fail(errc::backend_failure, "iteration " + std::to_string(i) + ": " + e.what());
    }
  }
  return series;
}

}  // namespace infercost
