#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "runner/config.hpp"
#include "runner/experiment.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kOutputError = 3,
  kConvergenceError = 4,
};

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qdc::runner;

  CLI::App app{"Dense coding through an engineered cavity array"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> preset, experiment, out_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool stamp = false;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment and write a CSV table");
  run_cmd->add_option("--config", config_path, "JSON config (or a CSV written by this tool)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--preset", preset, "Built-in parameter set")
      ->check(CLI::IsMember(preset_names()));
  run_cmd->add_option("--experiment", experiment,
                      "transfer_curve | ideal_fidelity | decay_sweep | "
                      "superconducting_point | disorder_coupling | disorder_frequency");
  run_cmd->add_option("--seed", seed, "Seed for disorder sampling");
  run_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");
  run_cmd->add_option("--threads", threads, "Worker threads, 0 = all cores");
  run_cmd->add_flag("--timestamp", stamp, "Add a timestamp line to the metadata");

  auto* presets_cmd = app.add_subcommand("presets", "List presets as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (presets_cmd->parsed()) {
    nlohmann::json all;
    for (const auto& name : preset_names()) all[name] = preset_json(name);
    std::cout << all.dump(2) << '\n';
    return kOk;
  }

  try {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) doc = read_config_document(config_path);
    const ExperimentConfig config =
        resolve_config(doc, Overrides{preset, experiment, seed, out_path});
    const ResultTable table = run(config, RunOptions{threads, stamp ? utc_now() : ""});
    if (config.output.empty() || config.output == "-")
      write_csv(table, std::cout);
    else
      write_csv(table, config.output);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kOutputError;
  } catch (const qdc::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergenceError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
