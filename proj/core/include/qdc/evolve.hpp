// Unitary evolution in the single-excitation sector. Three engines that
// do not share code paths, so each can check the others:
//
//   evolve_closed_form  binomial amplitudes of the engineered chain
//                       (spin-(N+1)/2 rotation picture)
//   evolve_matrix_exp   exp(-i H t) by eigendecomposition, any couplings
//   evolve_two_mode     two bosonic modes holding N+1 quanta, expanded
//                       through the transformed creation operators
#pragma once

#include <Eigen/Dense>

#include "qdc/model.hpp"

namespace qdc {

/// Amplitudes on the Basis enumeration, lab frame unless stated otherwise.
struct StateVector {
  int n_cavities = 1;
  Eigen::VectorXcd amplitudes;

  static StateVector zero(int n_cavities);
  static StateVector basis(int n_cavities, const BasisState& state);

  Complex& operator[](const BasisState& s);
  Complex operator[](const BasisState& s) const;

  double norm() const { return amplitudes.norm(); }
  Complex inner(const StateVector& other) const;  // <this|other>
};

/// Fock amplitudes of two modes sharing N+1 quanta: entry n is |N+1-n, n>.
struct TwoModeState {
  int n_quanta = 1;
  Eigen::VectorXcd amplitudes;

  static TwoModeState fock(int n_quanta, int n);
};

inline constexpr int kMaxClosedFormCavities = 169;  // N+1 <= 170

/// sqrt(binom(N+1, k)) (cos jt)^{N+1-k} (-i sin jt)^k, 0 <= k <= N+1.
Complex amplitude_ck(int n_cavities, int k, double jt);

/// (sin jt)^{2(N+1)}: population reaching q2 from q1.
double transfer_probability(int n_cavities, double jt);

/// Closed-form propagator of the engineered chain, interaction picture.
/// Entry (to, from) over array sites 0..N+1 (the ground site is excluded).
/// The q1 column is exactly amplitude_ck.
Eigen::MatrixXcd closed_form_propagator(int n_cavities, double jt);

/// Requires engineered couplings; throws std::invalid_argument otherwise.
StateVector evolve_closed_form(const SystemParams& params,
                               const StateVector& initial, double t);

/// Works for any couplings and detunings.
StateVector evolve_matrix_exp(const SystemParams& params,
                              const StateVector& initial, double t);

/// Spectral form of the interaction-picture Hamiltonian, reusable across
/// times and initial states.
class Propagator {
 public:
  explicit Propagator(const SystemParams& params);

  /// exp(-i H t) on the array block, (N+3) x (N+3).
  Eigen::MatrixXcd array_unitary(double t) const;
  /// Interaction-picture evolution.
  StateVector apply_interaction(const StateVector& initial, double t) const;
  /// Lab-frame evolution (frame phases reattached).
  StateVector apply(const StateVector& initial, double t) const;

  const SystemParams& params() const { return params_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  SystemParams params_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Two-mode beam-splitter evolution under J (a1^+ a2 + a1 a2^+), jt = J t.
TwoModeState evolve_two_mode(int n_quanta, const TwoModeState& initial,
                             double jt);

/// Array amplitudes of one q3 block mapped onto the two-mode basis:
/// Q1Excited -> |N+1,0>, Photon(k) -> |N+1-k,k>, Q2Excited -> |0,N+1>.
TwoModeState to_two_mode(const StateVector& state, bool q3_excited);

}  // namespace qdc
