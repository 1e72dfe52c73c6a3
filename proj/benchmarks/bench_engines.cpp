#include <benchmark/benchmark.h>

#include <numbers>

#include "qdc/disorder.hpp"
#include "qdc/evolve.hpp"
#include "qdc/open_system.hpp"
#include "qdc/protocol.hpp"

namespace {

qdc::SystemParams chain(int n) {
  return qdc::SystemParams::engineered(n, 1.0, 4.0 * 1000 - (n + 1), 4000.0);
}

void BM_ClosedForm(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)));
  const auto psi = qdc::encode(qdc::initial_state(p.n_cavities), {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(qdc::evolve_closed_form(p, psi, 0.7));
}
BENCHMARK(BM_ClosedForm)->Arg(4)->Arg(10)->Arg(40)->Arg(160);

void BM_MatrixExp(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)));
  const auto psi = qdc::encode(qdc::initial_state(p.n_cavities), {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(qdc::evolve_matrix_exp(p, psi, 0.7));
}
BENCHMARK(BM_MatrixExp)->Arg(4)->Arg(10)->Arg(40)->Arg(160);

void BM_PropagatorReuse(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)));
  const qdc::Propagator prop(p);
  const auto psi = qdc::encode(qdc::initial_state(p.n_cavities), {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(prop.apply(psi, 0.7));
}
BENCHMARK(BM_PropagatorReuse)->Arg(10)->Arg(40);

void BM_TwoMode(benchmark::State& state) {
  const int quanta = static_cast<int>(state.range(0));
  const auto start = qdc::TwoModeState::fock(quanta, quanta / 2);
  for (auto _ : state) benchmark::DoNotOptimize(qdc::evolve_two_mode(quanta, start, 0.7));
}
BENCHMARK(BM_TwoMode)->Arg(5)->Arg(11)->Arg(41);

void BM_LindbladApply(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)));
  const qdc::Lindbladian l(p, {0.01, 0.0005});
  const auto rho = qdc::DensityMatrix::pure(qdc::initial_state(p.n_cavities)).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(l.apply(rho));
}
BENCHMARK(BM_LindbladApply)->Arg(4)->Arg(10)->Arg(20);

// One decay-sweep point: a single fidelity at the photonic-crystal rates.
void BM_DissipativeFidelity(benchmark::State& state) {
  const auto p = chain(10);
  const qdc::DecayRates rates{0.01, 0.0005};
  for (auto _ : state)
    benchmark::DoNotOptimize(qdc::dissipative_fidelity(p, rates, {0, 0}));
}
BENCHMARK(BM_DissipativeFidelity)->Unit(benchmark::kMillisecond);

void BM_DisorderRealization(benchmark::State& state) {
  const auto p = chain(10);
  const qdc::DisorderSpec spec{qdc::DisorderKind::Coupling, 0.3 * qdc::mean_inter_cavity(p), 1,
                               1};
  int index = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(qdc::realization_fidelities(p, spec, index++));
}
BENCHMARK(BM_DisorderRealization);

}  // namespace

BENCHMARK_MAIN();
