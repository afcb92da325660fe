// Copyright 2026 The axpue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "axpue/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "axpue/error.hpp"
#include "axpue/metrics.hpp"
#include "axpue/simulator.hpp"
#include "axpue/telemetry_io.hpp"

namespace axpue::cli {

namespace fs = std::filesystem;

namespace {

struct ComputeOptions {
  std::string power;
  std::string runs;
  std::string inventory;
  std::string scenario;
  std::string window;
  double max_gap = 60.0;
  std::string format = "json";
  std::string out;
};

struct SimulateOptions {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct ReportOptions {
  std::vector<std::string> files;
  std::string out;
  std::string series;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::string read_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write " + path);
  file << data;
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--window expects start,end");
  auto parse_time = [](const std::string& part) {
    std::size_t used = 0;
    try {
      const double value = std::stod(part, &used);
      if (used == part.size()) return value;
    } catch (const std::exception&) {
    }
    if (auto t = parse_rfc3339(part)) return *t;
    throw UsageError("bad --window bound '" + part + "'");
  };
  return {parse_time(text.substr(0, comma)), parse_time(text.substr(comma + 1))};
}

// File names match the references inside scenario.json.
void write_files(const fs::path& dir, const SimOutput& output) {
  fs::create_directories(dir);
  const std::pair<const char*, const std::string*> files[] = {
      {"power.csv", &output.power_csv},
      {"runs.jsonl", &output.runs_jsonl},
      {"inventory.json", &output.inventory_json},
      {"scenario.json", &output.manifest_json},
  };
  for (const auto& [name, data] : files) {
    std::ofstream file(dir / name, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write " + (dir / name).string());
    file << *data;
  }
}

int cmd_compute(const ComputeOptions& options, std::ostream& out, std::ostream& err) {
  const auto format = parse_report_format(options.format);
  if (!format) throw UsageError("--format must be json or csv");

  PipelineOptions pipeline;
  pipeline.max_gap = options.max_gap;
  if (!options.window.empty()) pipeline.window = parse_window(options.window);

  Inventory inventory;
  std::vector<PowerTrace> traces;
  std::vector<ApplicationRun> runs;
  if (!options.scenario.empty()) {
    auto scenario = load_scenario_file(options.scenario, options.max_gap);
    inventory = std::move(scenario.inventory);
    traces = std::move(scenario.traces);
    runs = std::move(scenario.runs);
    if (!pipeline.window) pipeline.window = scenario.window;
  } else {
    if (options.power.empty() || options.runs.empty() || options.inventory.empty()) {
      throw UsageError("compute needs --power, --runs and --inventory (or --scenario)");
    }
    {
      auto in = open_input(options.inventory);
      inventory = parse_inventory_json(in);
    }
    {
      auto in = open_input(options.power);
      traces = parse_power_csv(in);
    }
    {
      auto in = open_input(options.runs);
      runs = parse_runs_jsonl(in);
    }
  }

  const auto report = compute_report(traces, inventory, runs, pipeline);
  for (const auto& warning : report.warnings) err << "warning: " << warning << "\n";
  write_output(options.out, write_report(report, *format), out);
  return kOk;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& err) {
  std::optional<SimScenario> scenario = builtin_scenario(options.scenario);
  if (!scenario) {
    if (!fs::is_regular_file(options.scenario)) {
      std::string known;
      for (const auto& name : builtin_scenario_names()) known += " " + name;
      throw UsageError("unknown scenario '" + options.scenario +
                       "' (built-in:" + known + ", or a manifest path)");
    }
    scenario = parse_scenario_json(read_file(options.scenario));
  }
  if (options.seed) scenario->seed = *options.seed;
  const auto output = simulate(*scenario);
  write_files(options.out, output);
  err << "simulated " << scenario->name << " into " << options.out << "\n";
  return kOk;
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<MetricsReport> reports;
  for (const auto& path : options.files) {
    try {
      reports.push_back(parse_report_json(read_file(path)));
    } catch (const Error& e) {
      throw Error(e.kind(), path + ": " + e.detail(), e.line(), e.device_id());
    }
  }
  std::vector<std::string> warnings;
  const auto table = write_report_table(reports, &warnings);
  for (const auto& warning : warnings) err << "warning: " << warning << "\n";
  write_output(options.out, table, out);

  std::string series_path = options.series;
  if (series_path.empty()) {
    if (options.out.empty() || options.out == "-") {
      throw UsageError("--series is required when the table goes to stdout");
    }
    fs::path p(options.out);
    series_path = (p.parent_path() / (p.stem().string() + ".series.csv")).string();
  }
  write_output(series_path, write_report_series(reports), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"axpue: PUE and application-level efficiency (ApPUE/AoPUE) metrics",
               "axpue"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* compute_cmd =
      app.add_subcommand("compute", "Compute a metrics report from telemetry and run logs");
  compute_cmd->add_option("--power", compute.power, "Power samples CSV");
  compute_cmd->add_option("--runs", compute.runs, "Application runs JSONL");
  compute_cmd->add_option("--inventory", compute.inventory, "Device inventory JSON");
  compute_cmd->add_option("--scenario", compute.scenario,
                          "Scenario manifest (alternative to the three inputs)");
  compute_cmd->add_option("--window", compute.window, "Report window start,end");
  compute_cmd->add_option("--max-gap", compute.max_gap,
                          "Longest tolerated telemetry gap in seconds")
      ->capture_default_str();
  compute_cmd->add_option("--format", compute.format, "json or csv")
      ->capture_default_str();
  compute_cmd->add_option("--out", compute.out, "Output file (default stdout)");

  SimulateOptions simulate_opts;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Generate synthetic telemetry for a scenario");
  simulate_cmd->add_option("scenario", simulate_opts.scenario,
                           "paper:<workload>, paper:sort1, paper:sort2 or a manifest path")
      ->required();
  simulate_cmd->add_option("--out", simulate_opts.out, "Output directory")->required();
  simulate_cmd->add_option("--seed", simulate_opts.seed, "Override the scenario seed");

  ReportOptions report;
  auto* report_cmd =
      app.add_subcommand("report", "Merge JSON reports into a table and plot series");
  report_cmd->add_option("files", report.files, "Report JSON files")->required();
  report_cmd->add_option("--out", report.out, "Merged CSV table")->required();
  report_cmd->add_option("--series", report.series,
                         "Long-format series CSV (default <out>.series.csv)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*compute_cmd) return cmd_compute(compute, out, err);
    if (*simulate_cmd) return cmd_simulate(simulate_opts, err);
    if (*report_cmd) return cmd_report(report, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_coverage_error(e.kind()) ? kCoverageError : kValidationError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kValidationError;
}

}  // namespace axpue::cli
