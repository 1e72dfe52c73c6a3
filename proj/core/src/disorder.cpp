#include "qdc/disorder.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qdc/evolve.hpp"
#include "qdc/parallel.hpp"
#include "qdc/protocol.hpp"

namespace qdc {

namespace {

constexpr int kMaxRedraws = 10000;

double draw_positive(Rng& rng, double centre, double width, long long& redraws) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const double v = rng.uniform(centre - 0.5 * width, centre + 0.5 * width);
    if (v > 0.0) return v;
    ++redraws;
  }
  throw std::runtime_error("disorder width leaves no positive couplings to draw");
}

}  // namespace

void DisorderSpec::validate() const {
  if (!(width >= 0.0) || !std::isfinite(width))
    throw std::invalid_argument("disorder width must be finite and >= 0");
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
}

double mean_inter_cavity(const SystemParams& params) {
  if (params.inter_cavity.empty())
    throw std::invalid_argument("mean inter-cavity coupling needs at least two cavities");
  return std::accumulate(params.inter_cavity.begin(), params.inter_cavity.end(), 0.0) /
         static_cast<double>(params.inter_cavity.size());
}

SystemParams sample_params(const SystemParams& base, const DisorderSpec& spec,
                           Rng& rng, long long* resampled) {
  spec.validate();
  if (!base.is_engineered())
    throw std::invalid_argument("disorder is sampled around engineered parameters");
  if (spec.width == 0.0) return base;

  long long redraws = 0;
  SystemParams out = base;
  const double w = spec.width;
  if (spec.kind == DisorderKind::Coupling) {
    out.g = draw_positive(rng, base.g, w, redraws);
    for (auto& jk : out.inter_cavity) jk = draw_positive(rng, jk, w, redraws);
    out.g_q2 = draw_positive(rng, base.q2_coupling(), w, redraws);
  } else {
    out.cavity_detuning.assign(static_cast<std::size_t>(base.n_cavities), 0.0);
    for (auto& d : out.cavity_detuning) d = rng.uniform(-0.5 * w, 0.5 * w);
  }
  if (resampled) *resampled += redraws;
  return out;
}

std::array<double, 4> realization_fidelities(const SystemParams& base,
                                             const DisorderSpec& spec, int index,
                                             long long* resampled) {
  Rng rng(spec.seed, static_cast<std::uint64_t>(index));
  const SystemParams params = sample_params(base, spec, rng, resampled);
  const double t = base.transfer_time();
  const Propagator propagator(params);
  const StateVector psi0 = initial_state(base.n_cavities);
  std::array<double, 4> out{};
  for (const auto& bits : all_bit_pairs()) {
    const StateVector evolved = propagator.apply(encode(psi0, bits), t);
    out[bits.index()] = std::norm(target_state(base.n_cavities, bits).inner(evolved));
  }
  return out;
}

DisorderResult disorder_average(const SystemParams& base, const DisorderSpec& spec,
                                unsigned threads) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.realizations);
  std::vector<std::array<double, 4>> samples(n);
  std::vector<long long> redraws(n, 0);
  parallel_for(spec.realizations, threads, [&](int r) {
    samples[static_cast<std::size_t>(r)] =
        realization_fidelities(base, spec, r, &redraws[static_cast<std::size_t>(r)]);
  });

  DisorderResult out;
  out.kind = spec.kind;
  out.width = spec.width;
  out.percent_disorder = (spec.kind == DisorderKind::Coupling && base.n_cavities >= 2)
                             ? spec.width / mean_inter_cavity(base) * 100.0
                             : std::numeric_limits<double>::quiet_NaN();
  out.resampled = std::accumulate(redraws.begin(), redraws.end(), 0LL);
  for (int i = 0; i < 4; ++i) {
    double sum = 0.0;
    for (const auto& s : samples) sum += s[i];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const auto& s : samples) sq += (s[i] - mean) * (s[i] - mean);
    const double stddev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
    out.mean_fidelities[i] = mean;
    out.std_errors[i] = stddev / std::sqrt(static_cast<double>(n));
  }
  return out;
}

std::vector<DisorderResult> disorder_sweep(const SystemParams& base, DisorderKind kind,
                                           const std::vector<double>& widths,
                                           int realizations, std::uint64_t seed,
                                           unsigned threads) {
  std::vector<DisorderResult> out;
  out.reserve(widths.size());
  for (double w : widths)
    out.push_back(disorder_average(base, {kind, w, realizations, seed}, threads));
  return out;
}

}  // namespace qdc
