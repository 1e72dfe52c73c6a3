// Dense coding through the array: Alice encodes two bits on q1, the
// excitation crosses the chain, Bob decodes on (q2, q3) with CNOT followed
// by a Hadamard on q2.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qdc/evolve.hpp"
#include "qdc/model.hpp"

namespace qdc {

struct ClassicalBits {
  int x = 0;
  int y = 0;

  ClassicalBits() = default;
  ClassicalBits(int x_bit, int y_bit);

  /// 0..3 in encoding-table order: (0,0), (1,0), (0,1), (1,1).
  int index() const { return x + 2 * y; }
  static ClassicalBits from_index(int i);

  friend bool operator==(const ClassicalBits&, const ClassicalBits&) = default;
};

/// The four pairs in encoding-table order; F_1..F_4 follow this order.
std::array<ClassicalBits, 4> all_bit_pairs();

enum class Engine { ClosedForm, MatrixExp };

/// (|ArrayGround,g> + |Q1Excited,e>) / sqrt(2): q1 and q3 share a Bell pair.
StateVector initial_state(int n_cavities);

/// Applies I, sigma_z, sigma_x or sigma_x sigma_z to q1.
/// sigma_x throws std::invalid_argument if the state has photon or q2
/// support, since flipping q1 is not defined there.
StateVector encode(const StateVector& state, const ClassicalBits& bits);

StateVector apply_sigma_z_q1(const StateVector& state);
StateVector apply_sigma_x_q1(const StateVector& state);

/// Whether exp(-i omega T) and exp(-i omega_q3 T) line up so the evolved
/// states hit the targets exactly: omega/J = 4n - (N+1), omega_q3/J = 4m.
struct PhaseCheck {
  bool compliant = false;
  long long n = 0;  // nearest integer solutions
  long long m = 0;
  double nearest_omega = 0.0;     // compliant values closest to the input
  double nearest_omega_q3 = 0.0;
  bool unphysical = false;  // nearest compliant omega would be negative
};

PhaseCheck phase_condition(const SystemParams& params);

/// Bell-like state of (q2, q3) with q1 in ground and the cavities empty.
StateVector target_state(int n_cavities, const ClassicalBits& bits);

struct DecodeResult {
  StateVector state;                          // after CNOT and Hadamard
  std::array<double, 4> probabilities{};      // by ClassicalBits::index()
  double leakage = 0.0;                       // population outside (q2, q3)
  bool leaked = false;                        // leakage above kLeakageTolerance
};

inline constexpr double kLeakageTolerance = 1e-6;

/// CNOT (control q2, target q3) then Hadamard on q2, read out as
/// x <- q2, y <- q3. Components with q1 or photon support are projected
/// out and the rest renormalized.
DecodeResult decode(const StateVector& state);

struct ProtocolResult {
  double time = 0.0;
  double fidelity = 0.0;
  std::array<double, 4> decoded_probabilities{};
  double success_probability = 0.0;
  double leakage = 0.0;
  // arg <target|evolved>; zero when every frame phase cancels.
  double residual_phase = 0.0;
};

/// Evolves the encoded state to `time` (default pi/2J) and scores it
/// against the target for `bits`.
ProtocolResult run_protocol(const SystemParams& params,
                            const ClassicalBits& bits, Engine engine,
                            std::optional<double> time = std::nullopt);

/// F_1..F_4 at each time in `times`.
std::vector<std::array<double, 4>> fidelity_curve(const SystemParams& params,
                                                  const std::vector<double>& times,
                                                  Engine engine);

enum class QubitPair { Q1Q3, Q2Q3 };

/// Two-qubit reduced density matrix, index 2 * first + q3 with g = 0, e = 1.
Eigen::Matrix4cd reduced_pair(const StateVector& state, QubitPair pair);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Eigen::Matrix4cd& rho);

}  // namespace qdc
