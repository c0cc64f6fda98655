// slipkit command line: simulate stick-slip scenarios, run the friction
// estimator on traces, sweep limit surfaces, and aggregate report tables.
// Every command writes a manifest JSON next to its outputs with the resolved
// arguments and seed, enough to reproduce the run bit-exactly.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slipkit/csv.hpp"
#include "slipkit/errors.hpp"
#include "slipkit/estimator.hpp"
#include "slipkit/ingest.hpp"
#include "slipkit/limit_surface.hpp"
#include "slipkit/simulator.hpp"
#include "slipkit/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitData = 1;   // runtime / data errors
constexpr int kExitUsage = 2;  // usage / config errors

void write_manifest(const fs::path& path, json manifest) {
  manifest["tool"] = "slipkit";
  manifest["version"] = kVersion;
  slipkit::csv::write_file_atomic(path, manifest.dump(2) + "\n");
}

std::vector<std::pair<std::string, std::string>> parse_overrides(
    const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw slipkit::ConfigError("--set expects key=value, got '" + s + "'");
    }
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

int run_simulate(const std::string& scenario_path, bool paper_like,
                 const std::string& out_dir, const std::string& name,
                 const std::vector<std::string>& sets) {
  slipkit::Scenario scenario;
  if (paper_like) {
    scenario.segments = slipkit::make_paper_like_scenario();
  } else {
    if (scenario_path.empty()) {
      throw slipkit::ConfigError("simulate needs --scenario <file> or --paper-like");
    }
    scenario = slipkit::load_scenario(scenario_path);
  }
  const auto overrides = parse_overrides(sets);
  for (const auto& [key, value] : overrides) {
    slipkit::apply_config_override(scenario.config, key, value);
  }
  scenario.config.validate();

  const auto trace = slipkit::run_scenario(scenario.segments, scenario.config);
  const auto paths = slipkit::write_trace(trace, out_dir, name);

  json manifest;
  manifest["command"] = "simulate";
  manifest["scenario"] = paper_like ? "--paper-like" : scenario_path;
  manifest["name"] = name;
  manifest["seed"] = scenario.config.seed;
  manifest["overrides"] = json::array();
  for (const auto& [key, value] : overrides) {
    manifest["overrides"].push_back(key + "=" + value);
  }
  manifest["out_dir"] = out_dir;
  manifest["outputs"] = {paths.force.string(), paths.velocity.string(),
                         paths.truth.string(), paths.events.string()};
  write_manifest(fs::path(out_dir) / (name + "_manifest.json"), std::move(manifest));

  std::cout << "wrote " << paths.force.string() << " (+vel, truth, events)\n";
  return kExitOk;
}

int run_estimate(const std::string& trace_prefix, const std::string& params_path,
                 bool no_heuristic, const std::string& out_dir) {
  slipkit::EstimatorParams params;
  if (!params_path.empty()) params = slipkit::load_estimator_params(params_path);
  if (no_heuristic) params.heuristic_enabled = false;

  const fs::path prefix(trace_prefix);
  const fs::path force_file = prefix.string() + "_force.csv";
  const fs::path vel_file = prefix.string() + "_vel.csv";
  const fs::path truth_file = prefix.string() + "_truth.csv";

  const auto raw = slipkit::parse_trace(force_file, vel_file);
  const auto stream = slipkit::align(raw, params.tick_dt);

  slipkit::FrictionEstimator estimator(params);
  const auto records = estimator.run(stream);

  std::vector<slipkit::TruthSample> truth;
  const bool have_truth = fs::exists(truth_file);
  if (have_truth) truth = slipkit::read_truth(truth_file);

  const std::string stem = prefix.filename().string();
  const fs::path out_csv = fs::path(out_dir) / (stem + "_est.csv");
  slipkit::write_estimates_csv(out_csv, records, have_truth ? &truth : nullptr);

  json manifest;
  manifest["command"] = "estimate";
  manifest["trace_prefix"] = trace_prefix;
  manifest["params_file"] = params_path;
  manifest["heuristic_enabled"] = params.heuristic_enabled;
  manifest["out_dir"] = out_dir;
  manifest["outputs"] = {out_csv.string()};
  write_manifest(fs::path(out_dir) / (stem + "_est_manifest.json"), std::move(manifest));

  std::cout << "wrote " << out_csv.string() << " (" << records.size() << " ticks)\n";
  return kExitOk;
}

// Expands arguments that contain '*' against their parent directory; plain
// paths pass through. Only the filename component may carry wildcards.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& args) {
  std::vector<fs::path> files;
  for (const auto& arg : args) {
    if (arg.find('*') == std::string::npos) {
      files.emplace_back(arg);
      continue;
    }
    const fs::path pattern(arg);
    const fs::path dir = pattern.parent_path().empty() ? "." : pattern.parent_path();
    const std::string file_pat = pattern.filename().string();
    // Translate the shell-style pattern to a regex: escape, then '*' -> '.*'.
    std::string re;
    for (char c : file_pat) {
      if (c == '*') re += ".*";
      else if (std::string("^$.|?+()[]{}\\").find(c) != std::string::npos) {
        re += '\\';
        re += c;
      } else re += c;
    }
    if (!fs::is_directory(dir)) continue;
    std::vector<fs::path> matched;
    const std::regex rx(re);
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (std::regex_match(entry.path().filename().string(), rx)) {
        matched.push_back(entry.path());
      }
    }
    std::sort(matched.begin(), matched.end());
    files.insert(files.end(), matched.begin(), matched.end());
  }
  return files;
}

int run_report(const std::vector<std::string>& inputs, const std::string& out_path,
               const std::string& window_name) {
  const auto files = expand_inputs(inputs);
  if (files.empty()) {
    throw slipkit::ConfigError("report: no estimate files match the given inputs");
  }
  const auto window = window_name == "all" ? slipkit::StatsWindow::kAllValid
                                           : slipkit::StatsWindow::kPostFirstUpdate;

  std::vector<slipkit::TrialSummary> trials;
  for (const auto& file : files) {
    std::string trial = file.stem().string();
    if (trial.size() > 4 && trial.ends_with("_est")) trial.resize(trial.size() - 4);
    trials.push_back(slipkit::summarize_trial(trial, slipkit::read_estimates_csv(file), window));
  }
  const auto rows = slipkit::build_report(trials);

  const fs::path csv_path = fs::path(out_path).replace_extension(".csv");
  const fs::path txt_path = fs::path(out_path).replace_extension(".txt");
  slipkit::csv::write_file_atomic(csv_path, slipkit::report_to_csv(rows));
  const std::string text = slipkit::report_to_text(rows);
  slipkit::csv::write_file_atomic(txt_path, text);

  json manifest;
  manifest["command"] = "report";
  manifest["inputs"] = json::array();
  for (const auto& f : files) manifest["inputs"].push_back(f.string());
  manifest["stats_window"] = window_name;
  manifest["outputs"] = {csv_path.string(), txt_path.string()};
  write_manifest(fs::path(out_path).replace_extension(".manifest.json"), std::move(manifest));

  std::cout << text;
  return kExitOk;
}

int run_limit_surface(const std::string& dist_spec, int n_dirs, int resolution,
                      const std::string& out_path) {
  const auto dist = slipkit::PressureDistribution::parse(dist_spec);
  const auto sweep = slipkit::limit_surface_sweep(dist, n_dirs, resolution);
  slipkit::csv::write_file_atomic(out_path, slipkit::sweep_to_csv(sweep));

  json manifest;
  manifest["command"] = "limit-surface";
  manifest["dist"] = dist_spec;
  manifest["dirs"] = n_dirs;
  manifest["resolution"] = resolution;
  manifest["outputs"] = {out_path};
  write_manifest(fs::path(out_path).replace_extension(".manifest.json"), std::move(manifest));

  std::cout << "wrote " << out_path << " (" << sweep.size() << " directions, r_eff = "
            << slipkit::csv::format_g9(slipkit::effective_radius(dist)) << " m)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slipkit: online contact friction estimation for planar in-hand sliding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate stick-slip sensor traces");
  std::string scenario_path, sim_out = ".", sim_name = "trial";
  bool paper_like = false;
  std::vector<std::string> sim_sets;
  sim->add_option("--scenario", scenario_path, "Scenario file ([config] + [segment] blocks)");
  sim->add_flag("--paper-like", paper_like,
                "Use the built-in linear/stick/rotation/stick/planar scenario");
  sim->add_option("--out", sim_out, "Output directory");
  sim->add_option("--name", sim_name, "Trial name, prefixes the output files");
  sim->add_option("--set", sim_sets, "Config override key=value (repeatable)");

  // estimate
  auto* est = app.add_subcommand("estimate", "Run the friction estimator on a trace pair");
  std::string trace_prefix, params_path, est_out = ".", window_name = "post-first-update";
  bool no_heuristic = false;
  est->add_option("--trace", trace_prefix,
                  "Trace prefix; reads <prefix>_force.csv and <prefix>_vel.csv")
      ->required();
  est->add_option("--params", params_path, "Estimator parameter file (defaults otherwise)");
  est->add_flag("--no-heuristic", no_heuristic, "Disable the fn-rate halt heuristic");
  est->add_option("--out", est_out, "Output directory");

  // report
  auto* rep = app.add_subcommand("report", "Aggregate estimate CSVs into a comparison table");
  std::vector<std::string> report_inputs;
  std::string report_out = "report";
  rep->add_option("inputs", report_inputs, "Estimate CSVs (wildcards allowed)")->required();
  rep->add_option("--out", report_out, "Output path stem (.csv and .txt)");
  rep->add_option("--window", window_name,
                  "Stats window: post-first-update (default) or all")
      ->check(CLI::IsMember({"post-first-update", "all"}));

  // limit-surface
  auto* ls = app.add_subcommand("limit-surface", "Sweep the numeric limit surface to CSV");
  std::string dist_spec, ls_out = "sweep.csv";
  int n_dirs = 64, resolution = 0;
  ls->add_option("--dist", dist_spec, "disc:R | rim:R | grid:cells.csv")->required();
  ls->add_option("--dirs", n_dirs, "Number of sweep directions");
  ls->add_option("--resolution", resolution, "Quadrature resolution (0 = default)");
  ls->add_option("--out", ls_out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return run_simulate(scenario_path, paper_like, sim_out, sim_name, sim_sets);
    }
    if (est->parsed()) {
      return run_estimate(trace_prefix, params_path, no_heuristic, est_out);
    }
    if (rep->parsed()) {
      return run_report(report_inputs, report_out, window_name);
    }
    if (ls->parsed()) {
      return run_limit_surface(dist_spec, n_dirs, resolution, ls_out);
    }
  } catch (const slipkit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const slipkit::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
