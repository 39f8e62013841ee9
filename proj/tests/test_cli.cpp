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
// End-to-end tests against the built binary. The golden checks diff CLI
// output against the corresponding library call: the CLI must stay a thin
// shell with no numeric logic of its own.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"

using namespace infercost;

namespace {

namespace fs = std::filesystem;

const std::string cli = INFERCOST_CLI_PATH;
const std::string data_dir = INFERCOST_DATA_DIR;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path temp_file(const std::string& name) {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("infercost_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir / name;
}

CliResult run_cli(const std::string& args) {
  CliResult result;
  const auto err_path = temp_file("stderr.txt");
  const std::string command = cli + " " + args + " 2>" + err_path.string();
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err_in(err_path);
  std::ostringstream err_text;
  err_text << err_in.rdbuf();
  result.err = err_text.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string records_arg() { return "--records " + data_dir + "/linux_records.csv"; }
std::string pricing_arg() { return "--pricing " + data_dir + "/pricing.json"; }

std::vector<BenchmarkRecord> load_workload(const std::string& file, const std::string& workload) {
  auto all = parse_records_csv(slurp(data_dir + "/" + file));
  std::vector<BenchmarkRecord> subset;
  for (const auto& r : all)
    if (r.workload_id == workload) subset.push_back(r);
  return subset;
}

PricingTable load_fixture_pricing() {
  return average_pricing(parse_pricing_json(slurp(data_dir + "/pricing.json")));
}

}  // namespace

TEST_CASE("decide picks the fp16 GPU under a 10 ms bound") {
  const auto result =
      run_cli("decide " + records_arg() + " " + pricing_arg() +
              " --workload inceptionv3 --max-latency 10");
  CHECK(result.exit_code == 0);
  CHECK(result.out == "v100 fp16 3.34 ms/img $2.88/M\n");

  // golden: byte-identical to the library rendering
  ConstraintSet constraints;
  constraints.max_latency_ms = 10.0;
  const auto decision = select_optimal(load_workload("linux_records.csv", "inceptionv3"),
                                       load_fixture_pricing(), constraints);
  CHECK(result.out == render_decision(decision) + "\n");
}

TEST_CASE("decide exits 2 and names the minimum latency when infeasible") {
  const auto result = run_cli("decide " + records_arg() + " " + pricing_arg() +
                              " --workload inceptionv3 --max-latency 2");
  CHECK(result.exit_code == 2);
  CHECK(result.out.find("3.34") != std::string::npos);
}

TEST_CASE("decide exits 1 on a missing price with a diagnostic") {
  const auto partial = temp_file("partial_pricing.json");
  std::ofstream(partial) << "{\"quotes\":[{\"provider\":\"a\",\"config\":\"v100\","
                            "\"usd_per_hour\":3.1}]}";
  const auto result = run_cli("decide " + records_arg() + " --pricing " + partial.string() +
                              " --workload inceptionv3 --max-latency 10");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("missing_price") != std::string::npos);
}

TEST_CASE("decide exits 1 on an unreadable file") {
  const auto result = run_cli("decide --records /nonexistent.csv " + pricing_arg() +
                              " --workload inceptionv3");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("nonexistent") != std::string::npos);
}

TEST_CASE("decide exits 1 on bad constraint flags") {
  const auto result = run_cli("decide " + records_arg() + " " + pricing_arg() +
                              " --workload inceptionv3 --max-latency -1");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("negative_latency_bound") != std::string::npos);
}

TEST_CASE("sweep writes the decision-curve CSV and SVG") {
  const auto csv_path = temp_file("curve.csv");
  const auto svg_path = temp_file("curve.svg");
  const auto result =
      run_cli("sweep " + records_arg() + " " + pricing_arg() +
              " --workload inceptionv3 --out " + csv_path.string() + " --svg " +
              svg_path.string());
  CHECK(result.exit_code == 0);

  const auto csv = slurp(csv_path);
  const auto curve = decision_curve(load_workload("linux_records.csv", "inceptionv3"),
                                    load_fixture_pricing(), ConstraintSet{});
  CHECK(csv == write_curve_csv(curve));  // golden
  CHECK(csv.find("0,3.34,infeasible,,,") != std::string::npos);
  CHECK(csv.find("3.34,19.49,optimal,v100,fp16,2.88") != std::string::npos);
  CHECK(csv.find("19.49,inf,optimal,xeon,fp32,1.65") != std::string::npos);
  CHECK(csv.find("k80") == std::string::npos);

  const auto svg = slurp(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg == render_curve_svg(curve));  // golden
}

TEST_CASE("sweep prints to stdout without --out and honors --precisions") {
  const auto result = run_cli("sweep " + records_arg() + " " + pricing_arg() +
                              " --workload inceptionv3 --precisions fp32");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("0,4.69,infeasible,,,") != std::string::npos);
  CHECK(result.out.find("4.69,19.49,optimal,v100,fp32,4.04") != std::string::npos);
}

TEST_CASE("sweep exits 1 on an unwritable output path") {
  const auto result = run_cli("sweep " + records_arg() + " " + pricing_arg() +
                              " --workload inceptionv3 --out /nonexistent_dir/curve.csv");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("io_error") != std::string::npos);
}

TEST_CASE("sweep exits 1 on an empty records file") {
  const auto empty = temp_file("empty_records.csv");
  std::ofstream(empty) << "workload,config,precision,os,latency_ms_per_img,metric,samples\n";
  const auto result = run_cli("sweep --records " + empty.string() + " " + pricing_arg() +
                              " --workload inceptionv3");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("empty_record_set") != std::string::npos);
}

TEST_CASE("compare reports the relative slowdown with the baseline named") {
  const auto result = run_cli("compare " + records_arg() +
                              " --workload inceptionv3 --baseline k80 --target xeon");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("+9.7% latency") != std::string::npos);
  CHECK(result.out.find("baseline k80") != std::string::npos);
}

TEST_CASE("compare adds the cost change when pricing is given") {
  const auto result = run_cli("compare " + records_arg() + " " + pricing_arg() +
                              " --workload inceptionv3 --baseline k80 --target xeon");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("-62.8% cost") != std::string::npos);

  // golden: byte-identical to the library rendering
  const auto records = load_workload("linux_records.csv", "inceptionv3");
  const auto pricing = load_fixture_pricing();
  const auto expected = render_comparison(resolve_selector(records, parse_selector("k80")),
                                          resolve_selector(records, parse_selector("xeon")),
                                          &pricing);
  CHECK(result.out == expected + "\n");
}

TEST_CASE("compare on the optimizer fixtures") {
  const auto result = run_cli("compare --records " + data_dir + "/optimizer_records.csv" +
                              " --workload unet --baseline i5-cpu-tensorflow --target amd-winml");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("-74.6% latency") != std::string::npos);
}

TEST_CASE("compare rejects ambiguous selectors") {
  const auto result = run_cli("compare " + records_arg() +
                              " --workload inceptionv3 --baseline k80 --target v100");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("ambiguous_selector") != std::string::npos);
}

TEST_CASE("equivalence on identical outputs accepts the null hypothesis") {
  const auto pairs = temp_file("identical_pairs.csv");
  {
    std::ofstream out(pairs);
    out << "id,output_a,output_b\n";
    for (int i = 0; i < 40; ++i)
      out << "img" << i << ",0.91,0.91\n";
  }
  const auto result = run_cli("equivalence --pairs " + pairs.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("p_value=1") != std::string::npos);
  CHECK(result.out.find("method=degenerate") != std::string::npos);
  CHECK(result.out.find("verdict: no significant output difference") != std::string::npos);
}

TEST_CASE("equivalence reports the exact p for three positive differences") {
  const auto pairs = temp_file("three_pairs.csv");
  std::ofstream(pairs) << "id,output_a,output_b\nimg1,1.0,0.9\nimg2,2.0,1.8\nimg3,3.0,2.7\n";
  const auto result = run_cli("equivalence --pairs " + pairs.string() + " --alpha 0.05");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("w_plus=6") != std::string::npos);
  CHECK(result.out.find("p_value=0.25") != std::string::npos);
  CHECK(result.out.find("method=exact") != std::string::npos);
}

TEST_CASE("equivalence runs on the shipped demo pairs") {
  const auto result = run_cli("equivalence --pairs " + data_dir + "/segmentation_pairs.csv");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("verdict: no significant output difference") != std::string::npos);

  // golden: byte-identical to the library rendering
  const auto pairs = parse_pairs_csv(slurp(data_dir + "/segmentation_pairs.csv"));
  CHECK(result.out == render_equivalence(wilcoxon_signed_rank(pairs, 0.05)));
}

TEST_CASE("equivalence rejects alpha outside (0,1)") {
  const auto result = run_cli("equivalence --pairs " + data_dir +
                              "/segmentation_pairs.csv --alpha 1.5");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("invalid_alpha") != std::string::npos);
}

TEST_CASE("bench writes a parsable timing CSV and prints the summary") {
  const auto out_path = temp_file("timing.csv");
  const auto result = run_cli("bench synthetic:const:0.05 --iterations 50 --warmup 5 --seed 3 "
                              "--out " + out_path.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("label=synthetic:const:0.05") != std::string::npos);
  CHECK(result.out.find("mean_ms=") != std::string::npos);
  CHECK(result.out.find("n_used=45") != std::string::npos);

  const auto series = parse_timing_csv(slurp(out_path), 5);
  CHECK(series.latencies_ms.size() == 50);
}

TEST_CASE("bench reports a mean within 10% of the simulated 2 ms delay") {
  const auto out_path = temp_file("timing_2ms.csv");
  const auto result = run_cli("bench synthetic:const:2.0 --iterations 500 --warmup 50 --out " +
                              out_path.string());
  CHECK(result.exit_code == 0);
  const auto pos = result.out.find("mean_ms=");
  REQUIRE(pos != std::string::npos);
  const double mean = std::stod(result.out.substr(pos + 8));
  CHECK(std::abs(mean - 2.0) / 2.0 < 0.10);
  CHECK(parse_timing_csv(slurp(out_path), 50).latencies_ms.size() == 500);
}

TEST_CASE("bench rejects a malformed backend spec") {
  const auto result = run_cli("bench synthetic:bogus --out " + temp_file("x.csv").string());
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("bad_backend_spec") != std::string::npos);
}

TEST_CASE("bench rejects warmup covering every iteration") {
  const auto result = run_cli("bench synthetic:const:0.01 --iterations 500 --warmup 500 --out " +
                              temp_file("y.csv").string());
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("warmup_exceeds_length") != std::string::npos);
}

TEST_CASE("report output is byte-identical to the library rendering") {
  for (const std::string format : {"md", "csv"}) {
    const auto result =
        run_cli("report " + records_arg() + " " + pricing_arg() + " --format " + format);
    CHECK(result.exit_code == 0);
    const auto expected =
        render_table(parse_records_csv(slurp(data_dir + "/linux_records.csv")),
                     load_fixture_pricing(),
                     format == "md" ? ReportFormat::markdown : ReportFormat::csv);
    CHECK(result.out == expected);  // golden
  }
}

TEST_CASE("unknown subcommands and missing flags exit 1") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("decide").exit_code == 1);
}
