// Batch driver for the tricopter attitude-control simulation.
//
//   tricopter_sim run <config> [--out <path>] [--seed N] [--scenario <name>]
//   tricopter_sim sweep-tables [--out <dir>]
//   tricopter_sim step-response <axis> <degrees> [--out <path>]
//   tricopter_sim metrics <trace.csv>
//
// Exit codes: 0 success, 1 validation error, 2 runtime abort.

#include "tricopter/harness/config.hpp"
#include "tricopter/harness/metrics.hpp"
#include "tricopter/harness/run.hpp"
#include "tricopter/harness/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace tricopter;
using namespace tricopter::harness;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::runtime_abort:
    case Errc::plant_state_corrupt:
    case Errc::io_error:
      return kExitRuntime;
    default:
      return kExitValidation;
  }
}

void write_trace(const std::vector<TraceRow>& rows, const std::string& out) {
  if (out.empty() || out == "-") {
    emit_csv(rows, std::cout);
  } else {
    const std::size_t bytes = emit_csv(rows, fs::path(out));
    std::cerr << "wrote " << rows.size() << " rows (" << bytes << " bytes) to " << out << "\n";
  }
}

Axis parse_axis(const std::string& name) {
  for (Axis axis : kAxes)
    if (name == axis_name(axis)) return axis;
  throw Error(Errc::invalid_config, "unknown axis '" + name + "' (expected roll, pitch or yaw)");
}

int cmd_run(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
            const std::string& preset_name) {
  Scenario base = preset_name.empty() ? Scenario{} : preset(preset_name);
  Scenario scenario = parse_config(config, base);
  if (seed) scenario.noise.seed = *seed;
  write_trace(run_scenario(scenario), out);
  return 0;
}

int cmd_sweep_tables(const std::string& out) {
  if (!out.empty()) fs::create_directories(out);
  const std::vector<double> angles(std::begin(kSweepAngles), std::end(kSweepAngles));

  std::string table = "axis,angle,accel,gyro_raw,fused\n";
  for (Axis axis : kAxes) {
    const Scenario scenario = sweep_scenario(axis);
    const auto rows = run_scenario(scenario);
    const auto holds = hold_readings(rows, axis, angles);

    std::printf("%s sweep\n  %-8s %-12s %-12s %-12s\n", axis_name(axis), "angle", "accel", "gyro_raw", "fused");
    for (const HoldReading& h : holds) {
      std::printf("  %-8.0f %-12.2f %-12.2f %-12.2f\n", h.angle, h.accel, h.gyro_raw, h.fused);
      char line[128];
      std::snprintf(line, sizeof line, "%s,%.6f,%.6f,%.6f,%.6f\n", axis_name(axis), h.angle, h.accel, h.gyro_raw,
                    h.fused);
      table += line;
    }
    if (!out.empty()) emit_csv(rows, fs::path(out) / ("sweep_" + std::string(axis_name(axis)) + ".csv"));
  }

  if (!out.empty()) {
    const fs::path path = fs::path(out) / "tables.csv";
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f || std::fwrite(table.data(), 1, table.size(), f) != table.size()) {
      if (f) std::fclose(f);
      throw Error(Errc::io_error, "cannot write " + path.string());
    }
    std::fclose(f);
    std::cerr << "wrote sweep traces and tables.csv to " << out << "\n";
  }
  return 0;
}

int cmd_step_response(const std::string& axis_text, double degrees, const std::string& out) {
  const Scenario scenario = step_scenario(parse_axis(axis_text), degrees);
  const auto rows = run_scenario(scenario);
  if (!out.empty()) write_trace(rows, out);
  std::cout << format_metrics(report_metrics(rows));
  return 0;
}

int cmd_metrics(const std::string& trace) {
  std::cout << format_metrics(report_metrics(read_csv(fs::path(trace))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tricopter attitude-control simulation"};
  app.require_subcommand(1);

  std::string config, out, preset_name, axis, trace;
  std::uint64_t seed = 0;
  double degrees = 10.0;

  auto* run = app.add_subcommand("run", "Run a scenario file and write its CSV trace");
  run->add_option("config", config, "Scenario config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output CSV path (default: stdout)");
  auto* seed_opt = run->add_option("--seed", seed, "Override noise.seed");
  run->add_option("--scenario", preset_name, "Built-in scenario the config is applied on top of")
      ->check(CLI::IsMember(preset_names()));

  auto* sweep = app.add_subcommand("sweep-tables", "Open-loop hold sweeps on all three axes");
  sweep->add_option("--out", out, "Directory for traces and tables.csv");

  auto* step = app.add_subcommand("step-response", "Closed-loop step on one axis with default parameters");
  step->add_option("axis", axis, "roll, pitch or yaw")->required();
  step->add_option("degrees", degrees, "Step size in degrees")->required();
  step->add_option("--out", out, "Output CSV path");

  auto* metrics = app.add_subcommand("metrics", "Step-response metrics of a CSV trace");
  metrics->add_option("trace", trace, "Trace CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(config, out, *seed_opt ? std::optional(seed) : std::nullopt, preset_name);
    if (*sweep) return cmd_sweep_tables(out);
    if (*step) return cmd_step_response(axis, degrees, out);
    if (*metrics) return cmd_metrics(trace);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
