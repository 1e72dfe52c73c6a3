#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qdc::runner {

using nlohmann::json;

namespace {

constexpr std::string_view kConfigPrefix = "# config: ";

const std::vector<std::pair<ExperimentKind, std::string>>& experiment_names() {
  static const std::vector<std::pair<ExperimentKind, std::string>> names{
      {ExperimentKind::TransferCurve, "transfer_curve"},
      {ExperimentKind::IdealFidelity, "ideal_fidelity"},
      {ExperimentKind::DecaySweep, "decay_sweep"},
      {ExperimentKind::SuperconductingPoint, "superconducting_point"},
      {ExperimentKind::DisorderCoupling, "disorder_coupling"},
      {ExperimentKind::DisorderFrequency, "disorder_frequency"},
  };
  return names;
}

Rate rate_from_json(const json& v, const std::string& key) {
  try {
    if (v.is_string()) return parse_frequency(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
  throw ConfigError(key + ": expected a frequency string or a number");
}

json rate_to_json(const Rate& r) {
  if (const auto* f = std::get_if<Frequency>(&r)) return format_frequency(*f);
  return std::get<double>(r);
}

bool is_bare(const Rate& r) { return std::holds_alternative<double>(r); }

json sweeps(json decay) {
  const double pi = std::numbers::pi;
  return {
      {"transfer_curve", {{"start", 0.0}, {"stop", pi}, {"points", 200}}},
      {"ideal_fidelity", {{"start", 0.0}, {"stop", pi}, {"points", 200}}},
      {"decay_sweep", std::move(decay)},
      {"disorder_coupling", {{"start", 0.0}, {"stop", 30.0}, {"points", 16}}},
      {"disorder_frequency", {{"start", 0.0}, {"stop", 1.0}, {"points", 21}}},
  };
}

template <class T>
T get_as(const json& obj, const std::string& key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : experiment_names())
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (const auto& [k, n] : experiment_names())
    if (n == name) return k;
  throw ConfigError("unknown experiment '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (n_cavities < 1) throw ConfigError("params.n_cavities must be >= 1");
  if (n_cavities > kMaxClosedFormCavities) throw ConfigError("params.n_cavities too large");
  if (!(j_angular() > 0.0)) throw ConfigError("params.j must be > 0");
  if (!physical_units()) {
    for (const Rate* r : {&omega, &omega_q3, &kappa, &gamma})
      if (!is_bare(*r))
        throw ConfigError("frequency strings need params.j in physical units too");
    if (g && !is_bare(*g))
      throw ConfigError("frequency strings need params.j in physical units too");
  }
  if (angular(omega) < 0.0 || angular(omega_q3) < 0.0)
    throw ConfigError("resonance frequencies must be >= 0");
  if (g && !(angular(*g) > 0.0)) throw ConfigError("params.g must be > 0");
  if (angular(kappa) < 0.0 || angular(gamma) < 0.0)
    throw ConfigError("decay rates must be >= 0");
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  if (engine == Engine::ClosedForm && g)
    throw ConfigError("closed_form engine requires engineered couplings (omit params.g)");

  if (experiment == ExperimentKind::SuperconductingPoint) return;
  if (sweep.points < 1) throw ConfigError("sweep grid is empty (sweep.points must be >= 1)");
  const bool unitless_axis = experiment == ExperimentKind::TransferCurve ||
                             experiment == ExperimentKind::IdealFidelity ||
                             experiment == ExperimentKind::DisorderCoupling;
  if (unitless_axis && (!is_bare(sweep.start) || !is_bare(sweep.stop)))
    throw ConfigError("sweep for " + to_string(experiment) + " takes plain numbers");
  if (!physical_units() && (!is_bare(sweep.start) || !is_bare(sweep.stop)))
    throw ConfigError("frequency strings need params.j in physical units too");
  for (double x : grid())
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("sweep values must be finite and >= 0");
}

bool ExperimentConfig::physical_units() const {
  return std::holds_alternative<Frequency>(j);
}

double ExperimentConfig::j_angular() const {
  if (const auto* f = std::get_if<Frequency>(&j)) return f->angular();
  return std::get<double>(j);
}

double ExperimentConfig::angular(const Rate& r) const {
  if (const auto* f = std::get_if<Frequency>(&r)) return f->angular();
  return std::get<double>(r) * j_angular();
}

SystemParams ExperimentConfig::system_params() const {
  SystemParams p = SystemParams::engineered(n_cavities, j_angular(), angular(omega),
                                            angular(omega_q3));
  if (g) p.g = angular(*g);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

DecayRates ExperimentConfig::decay_rates() const {
  return {angular(kappa), angular(gamma)};
}

std::vector<double> ExperimentConfig::grid() const {
  auto value = [&](const Rate& r) {
    switch (experiment) {
      case ExperimentKind::DecaySweep:
      case ExperimentKind::DisorderFrequency:
        return angular(r);
      default:
        return std::get<double>(r);
    }
  };
  const double a = value(sweep.start);
  const double b = value(sweep.stop);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(sweep.points, 0)));
  for (int i = 0; i < sweep.points; ++i)
    out.push_back(sweep.points == 1 ? a : a + (b - a) * i / (sweep.points - 1));
  return out;
}

json ExperimentConfig::to_json() const {
  json params{{"n_cavities", n_cavities},
              {"j", rate_to_json(j)},
              {"omega", rate_to_json(omega)},
              {"omega_q3", rate_to_json(omega_q3)},
              {"kappa", rate_to_json(kappa)},
              {"gamma", rate_to_json(gamma)}};
  if (g) params["g"] = rate_to_json(*g);
  json out{{"experiment", to_string(experiment)},
           {"params", std::move(params)},
           {"realizations", realizations},
           {"seed", seed}};
  if (experiment != ExperimentKind::SuperconductingPoint)
    out["sweep"] = {{"start", rate_to_json(sweep.start)},
                    {"stop", rate_to_json(sweep.stop)},
                    {"points", sweep.points}};
  if (engine) out["engine"] = *engine == Engine::ClosedForm ? "closed_form" : "matrix_exp";
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> top_keys{"experiment", "params", "sweep",
                                                 "realizations", "seed", "engine",
                                                 "output"};
  for (const auto& [key, _] : doc.items())
    if (std::find(top_keys.begin(), top_keys.end(), key) == top_keys.end())
      throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  if (!doc.contains("experiment")) throw ConfigError("missing 'experiment'");
  c.experiment = parse_experiment(get_as<std::string>(doc, "experiment"));

  if (!doc.contains("params") || !doc["params"].is_object())
    throw ConfigError("missing 'params' object");
  const json& p = doc["params"];
  static const std::vector<std::string> param_keys{"n_cavities", "j", "omega", "omega_q3",
                                                   "g", "kappa", "gamma"};
  for (const auto& [key, _] : p.items())
    if (std::find(param_keys.begin(), param_keys.end(), key) == param_keys.end())
      throw ConfigError("unknown params key '" + key + "'");
  if (!p.contains("n_cavities")) throw ConfigError("missing params.n_cavities");
  c.n_cavities = get_as<int>(p, "n_cavities");
  auto rate = [&](const char* key, Rate fallback) {
    return p.contains(key) ? rate_from_json(p[key], std::string("params.") + key) : fallback;
  };
  c.j = rate("j", 1.0);
  c.omega = rate("omega", 0.0);
  c.omega_q3 = rate("omega_q3", 0.0);
  if (p.contains("g")) c.g = rate_from_json(p["g"], "params.g");
  c.kappa = rate("kappa", 0.0);
  c.gamma = rate("gamma", 0.0);

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (!s.is_object()) throw ConfigError("'sweep' must be an object");
    if (!s.contains("start") || !s.contains("stop") || !s.contains("points"))
      throw ConfigError("sweep needs start, stop and points");
    c.sweep.start = rate_from_json(s["start"], "sweep.start");
    c.sweep.stop = rate_from_json(s["stop"], "sweep.stop");
    c.sweep.points = get_as<int>(s, "points");
  }
  if (doc.contains("realizations")) c.realizations = get_as<int>(doc, "realizations");
  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("engine")) {
    const auto e = get_as<std::string>(doc, "engine");
    if (e == "closed_form") c.engine = Engine::ClosedForm;
    else if (e == "matrix_exp") c.engine = Engine::MatrixExp;
    else throw ConfigError("engine must be closed_form or matrix_exp");
  }
  if (doc.contains("output")) c.output = get_as<std::string>(doc, "output");
  c.validate();
  return c;
}

std::vector<std::string> preset_names() {
  return {"photonic-crystal", "superconducting", "ideal-n4"};
}

json preset_json(const std::string& name) {
  // Cavity frequencies sit on the nearest value with omega/J = 4n - (N+1),
  // i.e. omega/J = 989 for N = 10; omega_q3/J = 1000 already complies.
  if (name == "photonic-crystal")
    return {{"params",
             {{"n_cavities", 10},
              {"j", "7GHz"},
              {"omega", "6.923THz"},
              {"omega_q3", "7THz"},
              {"kappa", "70MHz"},
              {"gamma", "3.5MHz"}}},
            {"realizations", 1000},
            {"seed", 1},
            {"sweeps", sweeps({{"start", "0MHz"}, {"stop", "70MHz"}, {"points", 30}})}};
  if (name == "superconducting")
    return {{"params",
             {{"n_cavities", 10},
              {"j", "1.9MHz"},
              {"omega", "1.8791GHz"},
              {"omega_q3", "1.9GHz"},
              {"kappa", "1.8kHz"},
              {"gamma", "1kHz"}}},
            {"realizations", 1000},
            {"seed", 1},
            {"sweeps", sweeps({{"start", "0kHz"}, {"stop", "3.6kHz"}, {"points", 13}})}};
  if (name == "ideal-n4")
    return {{"params",
             {{"n_cavities", 4},
              {"j", 1.0},
              {"omega", 9995.0},
              {"omega_q3", 10000.0},
              {"kappa", 0.0},
              {"gamma", 0.0}}},
            {"realizations", 1000},
            {"seed", 1},
            {"sweeps", sweeps({{"start", 0.0}, {"stop", 0.1}, {"points", 11}})}};
  throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig resolve_config(const json& document, const Overrides& overrides) {
  json doc = document.is_null() ? json::object() : document;
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  std::optional<std::string> preset = overrides.preset;
  if (!preset && doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("'preset' must be a string");
    preset = doc["preset"].get<std::string>();
  }
  doc.erase("preset");

  json merged = json::object();
  json preset_sweeps = json::object();
  if (preset) {
    merged = preset_json(*preset);
    preset_sweeps = merged["sweeps"];
    merged.erase("sweeps");
  }
  merged.merge_patch(doc);
  if (overrides.experiment) merged["experiment"] = *overrides.experiment;
  if (overrides.seed) merged["seed"] = *overrides.seed;
  if (overrides.output) merged["output"] = *overrides.output;
  if (!merged.contains("sweep") && merged.contains("experiment") &&
      merged["experiment"].is_string()) {
    const auto name = merged["experiment"].get<std::string>();
    if (preset_sweeps.contains(name)) merged["sweep"] = preset_sweeps[name];
  }
  return ExperimentConfig::from_json(merged);
}

json read_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    if (!text.empty() && text.front() == '#') {
      std::istringstream lines(text);
      for (std::string line; std::getline(lines, line);)
        if (line.rfind(kConfigPrefix, 0) == 0)
          return json::parse(line.substr(kConfigPrefix.size()));
      throw ConfigError("no '# config:' line in " + path.string());
    }
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace qdc::runner
