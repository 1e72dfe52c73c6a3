// Static disorder: couplings or cavity frequencies drawn once per
// realization, fidelities evaluated at the unperturbed transfer time and
// averaged.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qdc/model.hpp"
#include "qdc/rng.hpp"

namespace qdc {

enum class DisorderKind { Coupling, Frequency };

struct DisorderSpec {
  DisorderKind kind = DisorderKind::Coupling;
  double width = 0.0;  // delta J or delta omega, rad/time
  int realizations = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DisorderResult {
  DisorderKind kind = DisorderKind::Coupling;
  double width = 0.0;
  double percent_disorder = 0.0;  // width / <J_k> * 100; coupling kind only
  std::array<double, 4> mean_fidelities{};
  std::array<double, 4> std_errors{};  // sample std / sqrt(realizations)
  long long resampled = 0;             // non-positive couplings redrawn
};

/// Mean of J_1 .. J_{N-1}. Throws for N < 2.
double mean_inter_cavity(const SystemParams& params);

/// One disordered copy of `base` (which must be engineered).
///   Coupling:  every J_k uniform on [J_k - w/2, J_k + w/2]; the q1-end and
///              q2-end couplings each uniform on [g - w/2, g + w/2],
///              independently.
///   Frequency: every cavity frequency uniform on [omega - w/2, omega + w/2];
///              q1 and q2 stay at omega.
/// A draw <= 0 is redrawn and counted in `resampled`.
SystemParams sample_params(const SystemParams& base, const DisorderSpec& spec,
                           Rng& rng, long long* resampled = nullptr);

/// F_1..F_4 at T = pi/2J of the base for realization `index`, drawn from
/// stream (spec.seed, index). The stream does not depend on the width, so
/// a sweep reuses the same underlying draws at every grid point.
std::array<double, 4> realization_fidelities(const SystemParams& base,
                                             const DisorderSpec& spec,
                                             int index,
                                             long long* resampled = nullptr);

/// Averages over spec.realizations at each width. Results are identical for
/// any thread count.
DisorderResult disorder_average(const SystemParams& base, const DisorderSpec& spec,
                                unsigned threads = 0);

std::vector<DisorderResult> disorder_sweep(const SystemParams& base,
                                           DisorderKind kind,
                                           const std::vector<double>& widths,
                                           int realizations, std::uint64_t seed,
                                           unsigned threads = 0);

}  // namespace qdc
