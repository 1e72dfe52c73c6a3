// Experiment configuration (JSON) and the built-in parameter presets.
//
// Rates are written either as a frequency string ("7GHz", read as rate/2pi)
// or as a bare number in units of J. "j" itself may be a frequency string
// or a bare number (natural units, default 1).
//
//   {
//     "experiment": "decay_sweep",
//     "preset": "photonic-crystal",
//     "params": { "n_cavities": 10, "j": "7GHz", "omega": "6.923THz",
//                 "omega_q3": "7THz", "kappa": "70MHz", "gamma": "3.5MHz" },
//     "sweep": { "start": "0MHz", "stop": "70MHz", "points": 30 },
//     "realizations": 1000,
//     "seed": 1,
//     "engine": "matrix_exp",
//     "output": "decay.csv"
//   }
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdc/model.hpp"
#include "qdc/open_system.hpp"
#include "qdc/protocol.hpp"
#include "units.hpp"

namespace qdc::runner {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  TransferCurve,
  IdealFidelity,
  DecaySweep,
  SuperconductingPoint,
  DisorderCoupling,
  DisorderFrequency,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

/// A frequency in lab units, or a bare multiple of J.
using Rate = std::variant<Frequency, double>;

struct Sweep {
  Rate start = 0.0;
  Rate stop = 0.0;
  int points = 0;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::IdealFidelity;
  int n_cavities = 0;
  Rate j = 1.0;
  Rate omega = 0.0;
  Rate omega_q3 = 0.0;
  std::optional<Rate> g;  // engineered sqrt(N+1) J when absent
  Rate kappa = 0.0;
  Rate gamma = 0.0;
  Sweep sweep;
  int realizations = 1000;
  std::uint64_t seed = 0;
  std::optional<Engine> engine;
  std::string output;

  /// Throws ConfigError.
  void validate() const;

  /// J in rad/time. A frequency gives rad/s.
  double j_angular() const;
  /// Whether J carries a physical unit.
  bool physical_units() const;
  /// Resolves a rate to rad/time.
  double angular(const Rate& r) const;

  SystemParams system_params() const;
  DecayRates decay_rates() const;
  /// Grid points in the experiment's sweep variable: Jt for the curves,
  /// kappa (rad/time) for decay_sweep, percent for disorder_coupling,
  /// delta omega (rad/time) for disorder_frequency.
  std::vector<double> grid() const;

  /// Fully resolved echo: re-running from it reproduces the experiment.
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

/// Names of the built-in presets.
std::vector<std::string> preset_names();

/// Preset document: "params" plus default "sweeps" keyed by experiment.
nlohmann::json preset_json(const std::string& name);

struct Overrides {
  std::optional<std::string> preset;
  std::optional<std::string> experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
};

/// Merges preset (file's "preset" key, replaced by overrides.preset), the
/// document itself, then the overrides, and parses the result.
ExperimentConfig resolve_config(const nlohmann::json& document,
                                const Overrides& overrides);

/// Reads a JSON config file. A CSV written by this tool is also accepted:
/// its "# config:" line is used.
nlohmann::json read_config_document(const std::filesystem::path& path);

}  // namespace qdc::runner
