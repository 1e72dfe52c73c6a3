// Coupled-cavity array carrying two end qubits (q1, q2) plus a detached
// stored qubit q3. Everything here lives in the sector with at most one
// excitation in the array, tensored with the q3 two-level system.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qdc {

using Complex = std::complex<double>;

/// Physical constants of the array, all as angular rates (hbar = 1).
struct SystemParams {
  int n_cavities = 1;
  double j_unit = 1.0;    // J, the coupling scale
  double omega = 0.0;     // cavity frequency, shared by q1 and q2
  double omega_q3 = 0.0;  // Bob's stored qubit
  double g = 0.0;         // atom-cavity coupling at both ends
  // Set only when the q2 end differs from g (coupling disorder samples the
  // two ends independently).
  std::optional<double> g_q2;
  std::vector<double> inter_cavity;  // J_1 .. J_{N-1}
  // Per-cavity offsets (omega_k - omega). Empty means a resonant array.
  std::vector<double> cavity_detuning;

  /// Array with the mirror-symmetric couplings that give perfect transfer
  /// at t = pi / 2J.
  static SystemParams engineered(int n_cavities, double j_unit, double omega,
                                 double omega_q3);

  /// Throws std::invalid_argument on any broken invariant.
  void validate() const;

  double q2_coupling() const { return g_q2.value_or(g); }

  /// True when g and every J_k equal the engineered values (to 1e-12
  /// relative) and no cavity is detuned.
  bool is_engineered() const;

  /// pi / 2J.
  double transfer_time() const;
};

struct Couplings {
  double g;
  std::vector<double> inter_cavity;
};

/// g = sqrt(N+1) J, J_k = sqrt((k+1)(N+1-k)) J for k = 1..N-1.
Couplings default_couplings(int n_cavities, double j_unit);

enum class Sector : std::uint8_t { Q1Excited, Photon, Q2Excited, ArrayGround };

struct BasisState {
  Sector sector = Sector::ArrayGround;
  int photon_site = 0;  // 1..N when sector == Photon, else 0
  bool q3_excited = false;

  static BasisState q1(bool q3) { return {Sector::Q1Excited, 0, q3}; }
  static BasisState photon(int k, bool q3) { return {Sector::Photon, k, q3}; }
  static BasisState q2(bool q3) { return {Sector::Q2Excited, 0, q3}; }
  static BasisState ground(bool q3) { return {Sector::ArrayGround, 0, q3}; }

  bool array_excited() const { return sector != Sector::ArrayGround; }

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

std::string to_string(const BasisState& state);

/// Basis enumeration. The array sector runs over
///   Q1Excited, Photon(1), ..., Photon(N), Q2Excited, ArrayGround
/// ("site" 0..N+2), and each site is paired first with q3 = g, then q3 = e:
///   index = 2 * site + q3.
class Basis {
 public:
  explicit Basis(int n_cavities);

  int n_cavities() const { return n_; }
  /// Number of array-sector states, N + 3.
  int sites() const { return n_ + 3; }
  /// 2 (N + 3).
  int size() const { return 2 * sites(); }

  int site(const BasisState& state) const;
  BasisState site_state(int site, bool q3) const;

  int index(const BasisState& state) const;
  BasisState state(int index) const;

  static int index_of(int site, bool q3) { return 2 * site + (q3 ? 1 : 0); }

  int q1_site() const { return 0; }
  int q2_site() const { return n_ + 1; }
  int ground_site() const { return n_ + 2; }

 private:
  int n_;
};

enum class Frame : std::uint8_t { InteractionPicture };

/// Interaction-picture Hamiltonian on the Basis enumeration.
class Hamiltonian {
 public:
  /// Real symmetric matrix on the N+3 array sites (identical for both q3
  /// values).
  const Eigen::MatrixXd& array_block() const { return block_; }
  /// Full 2(N+3) matrix, block_ (x) identity on q3.
  Eigen::MatrixXcd matrix() const;
  int n_cavities() const { return n_; }
  Frame frame() const { return Frame::InteractionPicture; }

  /// Off-diagonal entries of the excited chain: (g, J_1, ..., J_{N-1}, g).
  std::vector<double> chain_couplings() const;

 private:
  friend Hamiltonian build_hamiltonian(const SystemParams& params);
  Hamiltonian(int n, Eigen::MatrixXd block) : n_(n), block_(std::move(block)) {}

  int n_;
  Eigen::MatrixXd block_;
};

Hamiltonian build_hamiltonian(const SystemParams& params);

/// Lab-frame phase picked up by `state` relative to ArrayGround (x) g:
/// exp(-i omega t) if the array carries the excitation, times
/// exp(-i omega_q3 t) if q3 is excited.
Complex frame_phase(const SystemParams& params, double t,
                    const BasisState& state);

/// frame_phase for every basis index.
Eigen::VectorXcd frame_phases(const SystemParams& params, double t);

}  // namespace qdc
