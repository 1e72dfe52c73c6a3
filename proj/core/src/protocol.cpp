#include "qdc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSupportTolerance = 1e-12;

}  // namespace

ClassicalBits::ClassicalBits(int x_bit, int y_bit) : x(x_bit), y(y_bit) {
  if ((x != 0 && x != 1) || (y != 0 && y != 1))
    throw std::invalid_argument("classical bits must be 0 or 1");
}

ClassicalBits ClassicalBits::from_index(int i) {
  if (i < 0 || i > 3) throw std::out_of_range("bit-pair index must be 0..3");
  return {i % 2, i / 2};
}

std::array<ClassicalBits, 4> all_bit_pairs() {
  return {ClassicalBits{0, 0}, ClassicalBits{1, 0}, ClassicalBits{0, 1},
          ClassicalBits{1, 1}};
}

StateVector initial_state(int n_cavities) {
  auto s = StateVector::zero(n_cavities);
  s[BasisState::ground(false)] = kInvSqrt2;
  s[BasisState::q1(true)] = kInvSqrt2;
  return s;
}

StateVector apply_sigma_z_q1(const StateVector& state) {
  const Basis basis(state.n_cavities);
  StateVector out = state;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.state(i).sector != Sector::Q1Excited) out.amplitudes[i] = -out.amplitudes[i];
  return out;
}

StateVector apply_sigma_x_q1(const StateVector& state) {
  const Basis basis(state.n_cavities);
  for (int i = 0; i < basis.size(); ++i) {
    const Sector s = basis.state(i).sector;
    if ((s == Sector::Photon || s == Sector::Q2Excited) &&
        std::abs(state.amplitudes[i]) > kSupportTolerance)
      throw std::invalid_argument(
          "sigma_x on q1 is undefined for states with photon or q2 support");
  }
  StateVector out = state;
  for (int q = 0; q < 2; ++q) {
    const int a = Basis::index_of(basis.q1_site(), q == 1);
    const int b = Basis::index_of(basis.ground_site(), q == 1);
    std::swap(out.amplitudes[a], out.amplitudes[b]);
  }
  return out;
}

StateVector encode(const StateVector& state, const ClassicalBits& bits) {
  StateVector out = state;
  if (bits.x == 1) out = apply_sigma_z_q1(out);
  if (bits.y == 1) out = apply_sigma_x_q1(out);
  return out;
}

PhaseCheck phase_condition(const SystemParams& params) {
  if (params.n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  if (!(params.j_unit > 0.0)) throw std::invalid_argument("j_unit must be > 0");
  const double n1 = params.n_cavities + 1;
  const double shifted = params.omega / params.j_unit + n1;
  const double q3 = params.omega_q3 / params.j_unit;

  PhaseCheck out;
  out.n = std::llround(shifted / 4.0);
  out.m = std::llround(q3 / 4.0);
  const bool n_ok = std::abs(shifted - 4.0 * out.n) <= 1e-9 * std::max(1.0, std::abs(shifted));
  const bool m_ok = std::abs(q3 - 4.0 * out.m) <= 1e-9 * std::max(1.0, std::abs(q3));
  out.compliant = n_ok && m_ok;

  long long n_phys = out.n;
  if (4.0 * n_phys - n1 < 0.0) {
    out.unphysical = true;
    n_phys = static_cast<long long>(std::ceil(n1 / 4.0));
  }
  long long m_phys = std::max<long long>(out.m, 0);
  out.nearest_omega = (4.0 * n_phys - n1) * params.j_unit;
  out.nearest_omega_q3 = 4.0 * m_phys * params.j_unit;
  return out;
}

StateVector target_state(int n_cavities, const ClassicalBits& bits) {
  auto s = StateVector::zero(n_cavities);
  switch (bits.index()) {
    case 0:
      s[BasisState::ground(false)] = kInvSqrt2;
      s[BasisState::q2(true)] = kInvSqrt2;
      break;
    case 1:
      s[BasisState::q2(true)] = kInvSqrt2;
      s[BasisState::ground(false)] = -kInvSqrt2;
      break;
    case 2:
      s[BasisState::q2(false)] = kInvSqrt2;
      s[BasisState::ground(true)] = kInvSqrt2;
      break;
    default:
      s[BasisState::ground(true)] = kInvSqrt2;
      s[BasisState::q2(false)] = -kInvSqrt2;
      break;
  }
  return s;
}

DecodeResult decode(const StateVector& state) {
  const int n = state.n_cavities;
  // (q2, q3) amplitudes, index 2 * q2 + q3.
  Eigen::Vector4cd pair;
  pair << state[BasisState::ground(false)], state[BasisState::ground(true)],
      state[BasisState::q2(false)], state[BasisState::q2(true)];

  const double total = state.amplitudes.squaredNorm();
  const double kept = pair.squaredNorm();
  DecodeResult out{StateVector::zero(n), {}, 0.0, false};
  out.leakage = std::max(0.0, total - kept);
  out.leaked = out.leakage > kLeakageTolerance;
  if (!(kept > 0.0))
    throw std::invalid_argument("state has no support on the (q2, q3) sector");
  pair /= std::sqrt(kept);

  // CNOT, control q2: |e,g> <-> |e,e>.
  std::swap(pair[2], pair[3]);
  // Hadamard on q2.
  Eigen::Vector4cd decoded;
  for (int q3 = 0; q3 < 2; ++q3) {
    decoded[q3] = kInvSqrt2 * (pair[q3] + pair[2 + q3]);
    decoded[2 + q3] = kInvSqrt2 * (pair[q3] - pair[2 + q3]);
  }

  out.state[BasisState::ground(false)] = decoded[0];
  out.state[BasisState::ground(true)] = decoded[1];
  out.state[BasisState::q2(false)] = decoded[2];
  out.state[BasisState::q2(true)] = decoded[3];
  for (int q2 = 0; q2 < 2; ++q2)
    for (int q3 = 0; q3 < 2; ++q3)
      out.probabilities[ClassicalBits(q2, q3).index()] = std::norm(decoded[2 * q2 + q3]);
  return out;
}

namespace {

ProtocolResult score(const StateVector& evolved, const ClassicalBits& bits,
                     double time) {
  ProtocolResult r;
  r.time = time;
  const Complex overlap = target_state(evolved.n_cavities, bits).inner(evolved);
  r.fidelity = std::norm(overlap);
  r.residual_phase = std::arg(overlap);
  const DecodeResult d = decode(evolved);
  r.decoded_probabilities = d.probabilities;
  r.success_probability = d.probabilities[bits.index()];
  r.leakage = d.leakage;
  return r;
}

}  // namespace

ProtocolResult run_protocol(const SystemParams& params, const ClassicalBits& bits,
                            Engine engine, std::optional<double> time) {
  params.validate();
  const double t = time.value_or(params.transfer_time());
  if (t < 0.0) throw std::invalid_argument("time must be >= 0");
  const StateVector encoded = encode(initial_state(params.n_cavities), bits);
  const StateVector evolved = engine == Engine::ClosedForm
                                  ? evolve_closed_form(params, encoded, t)
                                  : evolve_matrix_exp(params, encoded, t);
  return score(evolved, bits, t);
}

std::vector<std::array<double, 4>> fidelity_curve(const SystemParams& params,
                                                  const std::vector<double>& times,
                                                  Engine engine) {
  params.validate();
  std::optional<Propagator> propagator;
  if (engine == Engine::MatrixExp) propagator.emplace(params);
  const StateVector psi0 = initial_state(params.n_cavities);

  std::array<StateVector, 4> encoded;
  std::array<StateVector, 4> targets;
  for (const auto& bits : all_bit_pairs()) {
    encoded[bits.index()] = encode(psi0, bits);
    targets[bits.index()] = target_state(params.n_cavities, bits);
  }

  std::vector<std::array<double, 4>> out;
  out.reserve(times.size());
  for (double t : times) {
    std::array<double, 4> row{};
    for (int i = 0; i < 4; ++i) {
      const StateVector evolved = propagator
                                      ? propagator->apply(encoded[i], t)
                                      : evolve_closed_form(params, encoded[i], t);
      row[i] = std::norm(targets[i].inner(evolved));
    }
    out.push_back(row);
  }
  return out;
}

Eigen::Matrix4cd reduced_pair(const StateVector& state, QubitPair pair) {
  const Basis basis(state.n_cavities);
  const int own = pair == QubitPair::Q1Q3 ? basis.q1_site() : basis.q2_site();
  // Environment label per array site: 0 = nothing else excited; the
  // remaining sites (photons and the other end qubit) label themselves.
  std::vector<Eigen::Vector4cd> env(static_cast<std::size_t>(basis.sites()),
                                    Eigen::Vector4cd::Zero());
  for (int site = 0; site < basis.sites(); ++site) {
    const int qubit = site == own ? 1 : 0;
    const int label = (site == own || site == basis.ground_site()) ? 0 : site + 1;
    for (int q3 = 0; q3 < 2; ++q3)
      env[static_cast<std::size_t>(label)][2 * qubit + q3] +=
          state.amplitudes[Basis::index_of(site, q3 == 1)];
  }
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& v : env) rho += v * v.adjoint();
  return rho;
}

double concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd flipped = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(rho * flipped, false);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i)
    lambda[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[i].real()));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace qdc
