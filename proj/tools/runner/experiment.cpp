#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "qdc/disorder.hpp"
#include "qdc/evolve.hpp"
#include "qdc/open_system.hpp"
#include "qdc/parallel.hpp"
#include "qdc/protocol.hpp"

#ifndef QDC_VERSION
#define QDC_VERSION "0.0.0"
#endif

namespace qdc::runner {

namespace {

const std::vector<std::string> kFidelityColumns{"F1", "F2", "F3", "F4"};

void append(std::vector<double>& row, const std::array<double, 4>& values) {
  row.insert(row.end(), values.begin(), values.end());
}

ResultTable transfer_curve(const ExperimentConfig& c) {
  const SystemParams params = c.system_params();
  const Propagator propagator(params);
  const StateVector start = StateVector::basis(params.n_cavities, BasisState::q1(false));
  ResultTable t;
  t.headers = {"jt", "probability", "q2_population"};
  for (double jt : c.grid()) {
    const StateVector evolved = propagator.apply(start, jt / params.j_unit);
    t.rows.push_back({jt, transfer_probability(params.n_cavities, jt),
                      std::norm(evolved[BasisState::q2(false)])});
  }
  return t;
}

ResultTable ideal_fidelity(const ExperimentConfig& c) {
  const SystemParams params = c.system_params();
  const Engine engine = c.engine.value_or(params.is_engineered() ? Engine::ClosedForm
                                                                 : Engine::MatrixExp);
  std::vector<double> times;
  for (double jt : c.grid()) times.push_back(jt / params.j_unit);
  const auto curve = fidelity_curve(params, times, engine);
  ResultTable t;
  t.headers = {"jt"};
  t.headers.insert(t.headers.end(), kFidelityColumns.begin(), kFidelityColumns.end());
  const auto grid = c.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    append(row, curve[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ResultTable decay_sweep(const ExperimentConfig& c, unsigned threads) {
  const SystemParams params = c.system_params();
  const DecayRates base = c.decay_rates();
  const auto grid = c.grid();
  std::vector<std::array<double, 4>> fidelities(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    fidelities[static_cast<std::size_t>(i)] =
        dissipative_fidelities(params, {grid[static_cast<std::size_t>(i)], base.gamma});
  });
  ResultTable t;
  if (c.physical_units()) t.headers.push_back("nu_kappa_hz");
  t.headers.push_back("kappa_over_j");
  t.headers.insert(t.headers.end(), kFidelityColumns.begin(), kFidelityColumns.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row;
    if (c.physical_units()) row.push_back(grid[i] / (2.0 * std::numbers::pi));
    row.push_back(grid[i] / params.j_unit);
    append(row, fidelities[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ResultTable superconducting_point(const ExperimentConfig& c) {
  const SystemParams params = c.system_params();
  const DecayRates rates = c.decay_rates();
  ResultTable t;
  t.headers = {"kappa_over_j", "gamma_over_j"};
  t.headers.insert(t.headers.end(), kFidelityColumns.begin(), kFidelityColumns.end());
  t.headers.push_back(c.physical_units() ? "transfer_time_s" : "transfer_time");
  std::vector<double> row{rates.kappa / params.j_unit, rates.gamma / params.j_unit};
  append(row, dissipative_fidelities(params, rates));
  row.push_back(params.transfer_time());
  t.rows.push_back(std::move(row));
  return t;
}

ResultTable disorder(const ExperimentConfig& c, unsigned threads) {
  const SystemParams params = c.system_params();
  const bool coupling = c.experiment == ExperimentKind::DisorderCoupling;
  std::vector<double> widths;
  for (double x : c.grid())
    widths.push_back(coupling ? x / 100.0 * mean_inter_cavity(params) : x);
  const auto results =
      disorder_sweep(params, coupling ? DisorderKind::Coupling : DisorderKind::Frequency,
                     widths, c.realizations, c.seed, threads);
  ResultTable t;
  if (coupling) t.headers.push_back("percent_disorder");
  t.headers.push_back("width_over_j");
  t.headers.insert(t.headers.end(), kFidelityColumns.begin(), kFidelityColumns.end());
  for (const auto& f : kFidelityColumns) t.headers.push_back("SE_" + f);
  t.headers.push_back("resampled");
  for (const auto& r : results) {
    std::vector<double> row;
    if (coupling) row.push_back(r.percent_disorder);
    row.push_back(r.width / params.j_unit);
    append(row, r.mean_fidelities);
    append(row, r.std_errors);
    row.push_back(static_cast<double>(r.resampled));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string version() { return QDC_VERSION; }

std::size_t ResultTable::column(const std::string& name) const {
  const auto it = std::find(headers.begin(), headers.end(), name);
  if (it == headers.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - headers.begin());
}

std::vector<double> ResultTable::column_values(const std::string& name) const {
  const std::size_t i = column(name);
  std::vector<double> out;
  for (const auto& row : rows) out.push_back(row[i]);
  return out;
}

ResultTable run(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  ResultTable t;
  switch (config.experiment) {
    case ExperimentKind::TransferCurve: t = transfer_curve(config); break;
    case ExperimentKind::IdealFidelity: t = ideal_fidelity(config); break;
    case ExperimentKind::DecaySweep: t = decay_sweep(config, options.threads); break;
    case ExperimentKind::SuperconductingPoint: t = superconducting_point(config); break;
    case ExperimentKind::DisorderCoupling:
    case ExperimentKind::DisorderFrequency: t = disorder(config, options.threads); break;
  }
  t.metadata = {{"qdc", version()},
                {"experiment", to_string(config.experiment)},
                {"config", config.to_json().dump()}};
  if (!options.timestamp.empty()) t.metadata.emplace_back("timestamp", options.timestamp);
  return t;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.headers.size(); ++i)
    out << (i ? "," : "") << table.headers[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open output file " + path);
  write_csv(table, out);
  out.flush();
  if (!out) throw OutputError("failed writing output file " + path);
}

}  // namespace qdc::runner
