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
// infercost CLI. A thin shell over the library: every number printed here
// is produced by a library call; this file only parses flags, moves bytes,
// and maps outcomes to exit codes (0 ok, 1 input error, 2 infeasible).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infercost/infercost.hpp"

namespace {

using namespace infercost;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(errc::io_error, "short write to '" + path + "'");
}

template <class F>
auto in_file(const std::string& path, F&& parse) {
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.detail());
  }
}

std::vector<BenchmarkRecord> load_records(const std::string& path) {
  return in_file(path, [](const std::string& text) { return parse_records_csv(text); });
}

PricingTable load_pricing(const std::string& path) {
  return in_file(path,
                 [](const std::string& text) { return average_pricing(parse_pricing_json(text)); });
}

std::vector<BenchmarkRecord> workload_subset(const std::vector<BenchmarkRecord>& records,
                                             const std::string& workload) {
  std::vector<BenchmarkRecord> subset;
  for (const auto& r : records)
    if (r.workload_id == workload) subset.push_back(r);
  if (subset.empty())
    fail(errc::empty_record_set, "no records for workload '" + workload + "'");
  return subset;
}

struct ConstraintFlags {
  std::optional<double> max_latency_ms;
  std::optional<double> min_metric;
  std::vector<std::string> precisions{"fp32", "fp16"};
  std::string os;

  ConstraintSet build() const {
    RawConstraints raw;
    raw.max_latency_ms = max_latency_ms;
    raw.min_metric = min_metric;
    raw.precisions = precisions;
    if (!os.empty()) raw.os = os;
    return validate_constraints(raw);
  }
};

void add_constraint_flags(CLI::App& cmd, ConstraintFlags& flags, bool with_latency) {
  if (with_latency)
    cmd.add_option("--max-latency", flags.max_latency_ms, "Latency bound in ms per image");
  cmd.add_option("--min-metric", flags.min_metric, "Minimum output metric in [0,1]");
  cmd.add_option("--precisions", flags.precisions, "Allowed precisions (fp32[,fp16])")
      ->delimiter(',');
  cmd.add_option("--os", flags.os, "Restrict to one OS (linux|windows)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-optimal inference hardware selection under latency constraints"};
  app.require_subcommand(1);

  std::string records_path, pricing_path, pairs_path, workload;
  std::string out_path, svg_path, format = "md";
  std::string baseline_sel, target_sel, backend_spec;
  ConstraintFlags constraints;
  double alpha = 0.05;
  std::int64_t iterations = 5000, warmup = 200;
  std::uint64_t seed = 0;

  auto* decide = app.add_subcommand("decide", "Pick the cheapest feasible configuration");
  decide->add_option("--records", records_path, "Benchmark records CSV")->required();
  decide->add_option("--pricing", pricing_path, "Pricing quotes JSON")->required();
  decide->add_option("--workload", workload, "Workload id to decide for")->required();
  add_constraint_flags(*decide, constraints, true);

  auto* sweep = app.add_subcommand("sweep", "Decision curve over all latency limits");
  sweep->add_option("--records", records_path, "Benchmark records CSV")->required();
  sweep->add_option("--pricing", pricing_path, "Pricing quotes JSON")->required();
  sweep->add_option("--workload", workload, "Workload id to sweep")->required();
  sweep->add_option("--out", out_path, "Curve CSV output path (default: stdout)");
  sweep->add_option("--svg", svg_path, "Also write the curve plot as SVG");
  add_constraint_flags(*sweep, constraints, false);

  auto* compare = app.add_subcommand("compare", "Relative change of target vs baseline");
  compare->add_option("--records", records_path, "Benchmark records CSV")->required();
  compare->add_option("--workload", workload, "Workload id")->required();
  compare->add_option("--baseline", baseline_sel, "Baseline selector: config[:precision]")
      ->required();
  compare->add_option("--target", target_sel, "Target selector: config[:precision]")->required();
  compare->add_option("--pricing", pricing_path, "Pricing JSON (adds cost change)");
  compare->add_option("--os", constraints.os, "Restrict to one OS first");

  auto* equivalence = app.add_subcommand("equivalence", "Paired Wilcoxon signed-rank test");
  equivalence->add_option("--pairs", pairs_path, "Paired outputs CSV")->required();
  equivalence->add_option("--alpha", alpha, "Significance level in (0,1)")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run a timed trial against a synthetic backend");
  bench->add_option("spec", backend_spec, "Backend spec, e.g. synthetic:const:2.0")->required();
  bench->add_option("--iterations", iterations, "Trial iterations")->capture_default_str();
  bench->add_option("--warmup", warmup, "Warmup iterations to flag")->capture_default_str();
  bench->add_option("--seed", seed, "Input randomization seed")->capture_default_str();
  bench->add_option("--out", out_path, "Timing CSV output path")->required();

  auto* report = app.add_subcommand("report", "Latency/cost comparison table");
  report->add_option("--records", records_path, "Benchmark records CSV")->required();
  report->add_option("--pricing", pricing_path, "Pricing quotes JSON")->required();
  report->add_option("--format", format, "Output format: md|csv")->capture_default_str();
  report->add_option("--out", out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*decide) {
      const auto records = workload_subset(load_records(records_path), workload);
      const auto decision = select_optimal(records, load_pricing(pricing_path), constraints.build());
      std::cout << render_decision(decision) << "\n";
      return decision.is_feasible() ? 0 : 2;
    }
    if (*sweep) {
      const auto records = workload_subset(load_records(records_path), workload);
      const auto curve = decision_curve(records, load_pricing(pricing_path), constraints.build());
      const auto csv = write_curve_csv(curve);
      if (out_path.empty())
        std::cout << csv;
      else
        write_file(out_path, csv);
      if (!svg_path.empty()) write_file(svg_path, render_curve_svg(curve));
      return 0;
    }
    if (*compare) {
      auto records = workload_subset(load_records(records_path), workload);
      if (!constraints.os.empty()) {
        const Os os = parse_os(constraints.os);
        std::erase_if(records, [os](const BenchmarkRecord& r) { return r.os != os; });
      }
      const auto& base = resolve_selector(records, parse_selector(baseline_sel));
      const auto& target = resolve_selector(records, parse_selector(target_sel));
      std::optional<PricingTable> pricing;
      if (!pricing_path.empty()) pricing = load_pricing(pricing_path);
      std::cout << render_comparison(base, target, pricing ? &*pricing : nullptr) << "\n";
      return 0;
    }
    if (*equivalence) {
      const auto pairs = in_file(pairs_path, [](const std::string& t) { return parse_pairs_csv(t); });
      std::cout << render_equivalence(wilcoxon_signed_rank(pairs, alpha));
      return 0;
    }
    if (*bench) {
      auto backend = make_synthetic(parse_backend_spec(backend_spec), seed);
      backend->setup();
      TrialPlan plan;
      plan.iterations = iterations;
      plan.warmup = warmup;
      plan.seed = seed;
      const auto series = run_trial(*backend, plan);
      write_file(out_path, write_timing_csv(series));
      std::cout << render_summary(summarize(series), series.label);
      return 0;
    }
    if (*report) {
      const auto table = render_table(load_records(records_path), load_pricing(pricing_path),
                                      parse_report_format(format));
      if (out_path.empty())
        std::cout << table;
      else
        write_file(out_path, table);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "infercost: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
