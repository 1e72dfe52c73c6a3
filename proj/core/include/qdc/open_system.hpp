// Markovian loss on top of the array dynamics:
//
//   d rho/dt = -i [H, rho] + (k/2) sum_j L[a_j] rho + (gamma/2) sum_q L[s-_q] rho
//   L[o] rho = 2 o rho o^+ - o^+ o rho - rho o^+ o
//
// The basis stays exact under every jump, since each jump only removes the
// one excitation it acts on. The detached cavity next to q3 never holds a
// photon and contributes nothing.
#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdc/evolve.hpp"
#include "qdc/model.hpp"
#include "qdc/protocol.hpp"

namespace qdc {

struct DensityMatrix {
  int n_cavities = 1;
  Eigen::MatrixXcd matrix;  // interaction picture

  static DensityMatrix pure(const StateVector& state);

  Complex trace() const { return matrix.trace(); }
  /// max |rho - rho^+|
  double hermiticity_error() const;
  double min_eigenvalue() const;
};

struct DecayRates {
  double kappa = 0.0;  // every array cavity
  double gamma = 0.0;  // q1, q2 and q3

  void validate() const;
};

/// One jump operator: a sum of |to><from| with unit weight, scaled by rate.
struct JumpOperator {
  double rate = 0.0;
  std::vector<std::pair<int, int>> transitions;  // (to, from) basis indices
};

/// a_j for every cavity, then sigma_- on q1, q2, q3. Zero-rate channels
/// are still listed.
std::vector<JumpOperator> jump_operators(int n_cavities, const DecayRates& rates);

/// Right-hand side of the master equation for a fixed Hamiltonian.
class Lindbladian {
 public:
  Lindbladian(const SystemParams& params, const DecayRates& rates);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  /// Upper bound on the generator's spectral radius, used to size steps.
  double rate_bound() const { return rate_bound_; }
  int dimension() const { return dim_; }

 private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  int dim_;
  std::vector<Entry> hamiltonian_;
  std::vector<JumpOperator> jumps_;
  Eigen::VectorXd loss_;  // sum_j rate_j diag(L_j^+ L_j)
  Eigen::MatrixXd loss_half_;  // (loss_a + loss_b) / 2
  double rate_bound_;
};

DensityMatrix lindblad_rhs(const SystemParams& params, const DecayRates& rates,
                           const DensityMatrix& rho);

struct IntegratorOptions {
  // Accept once doubling the step count moves no entry of rho by more
  // than this.
  double tolerance = 1e-9;
  // 0 picks a count from the generator bound.
  int initial_steps = 0;
  int max_doublings = 12;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegrationReport {
  int steps = 0;
  double step_change = 0.0;  // max |rho_2n - rho_n| at acceptance
};

/// Fixed-step RK4 with step doubling until converged. Throws
/// ConvergenceError when max_doublings is exhausted.
DensityMatrix integrate(const SystemParams& params, const DecayRates& rates,
                        const DensityMatrix& rho0, double t,
                        const IntegratorOptions& options = {},
                        IntegrationReport* report = nullptr);

/// <target(T)| rho(T) |target(T)> for the encoded initial state, with the
/// target carried into the interaction picture by the frame phases at T.
double dissipative_fidelity(const SystemParams& params, const DecayRates& rates,
                            const ClassicalBits& bits,
                            const IntegratorOptions& options = {});

/// All four, in encoding-table order.
std::array<double, 4> dissipative_fidelities(const SystemParams& params,
                                             const DecayRates& rates,
                                             const IntegratorOptions& options = {});

}  // namespace qdc
