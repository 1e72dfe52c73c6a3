#include "qdc/open_system.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  return {state.n_cavities, state.amplitudes * state.amplitudes.adjoint()};
}

double DensityMatrix::hermiticity_error() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DecayRates::validate() const {
  if (!(kappa >= 0.0) || !(gamma >= 0.0) || !std::isfinite(kappa) ||
      !std::isfinite(gamma))
    throw std::invalid_argument("decay rates must be finite and >= 0");
}

std::vector<JumpOperator> jump_operators(int n_cavities, const DecayRates& rates) {
  const Basis basis(n_cavities);
  const int ground = basis.ground_site();
  std::vector<JumpOperator> out;
  auto drop_to_ground = [&](int site, double rate) {
    JumpOperator op{rate, {}};
    for (int q = 0; q < 2; ++q)
      op.transitions.emplace_back(Basis::index_of(ground, q == 1),
                                  Basis::index_of(site, q == 1));
    out.push_back(std::move(op));
  };
  for (int k = 1; k <= n_cavities; ++k) drop_to_ground(k, rates.kappa);
  drop_to_ground(basis.q1_site(), rates.gamma);
  drop_to_ground(basis.q2_site(), rates.gamma);
  JumpOperator q3{rates.gamma, {}};
  for (int site = 0; site < basis.sites(); ++site)
    q3.transitions.emplace_back(Basis::index_of(site, false),
                                Basis::index_of(site, true));
  out.push_back(std::move(q3));
  return out;
}

Lindbladian::Lindbladian(const SystemParams& params, const DecayRates& rates) {
  params.validate();
  rates.validate();
  const Hamiltonian h = build_hamiltonian(params);
  const Eigen::MatrixXd& block = h.array_block();
  const int sites = static_cast<int>(block.rows());
  dim_ = 2 * sites;
  double h_bound = 0.0;
  for (int a = 0; a < sites; ++a) {
    double row = 0.0;
    for (int b = 0; b < sites; ++b) {
      if (block(a, b) == 0.0) continue;
      row += std::abs(block(a, b));
      for (int q = 0; q < 2; ++q)
        hamiltonian_.push_back({Basis::index_of(a, q == 1), Basis::index_of(b, q == 1),
                                block(a, b)});
    }
    h_bound = std::max(h_bound, row);
  }
  loss_ = Eigen::VectorXd::Zero(dim_);
  for (auto& jump : jump_operators(params.n_cavities, rates)) {
    if (jump.rate == 0.0) continue;
    for (auto [to, from] : jump.transitions) loss_[from] += jump.rate;
    jumps_.push_back(std::move(jump));
  }
  loss_half_ = 0.5 * (loss_.replicate(1, dim_) + loss_.transpose().replicate(dim_, 1));
  rate_bound_ = 2.0 * h_bound + 2.0 * (loss_.size() ? loss_.maxCoeff() : 0.0);
}

Eigen::MatrixXcd Lindbladian::apply(const Eigen::MatrixXcd& rho) const {
  // -(1/2)(D rho + rho D) with D diagonal.
  Eigen::MatrixXcd out = -(loss_half_.array() * rho.array()).matrix();
  // -i (H rho - rho H), H stored as its nonzero entries. Multiplying by -i v
  // is done on real and imaginary parts to keep the inner loops cheap.
  auto minus_i_times = [](double v, Complex z) { return Complex(v * z.imag(), -v * z.real()); };
  for (int c = 0; c < dim_; ++c) {
    Complex* out_col = out.col(c).data();
    const Complex* rho_col = rho.col(c).data();
    for (const auto& e : hamiltonian_) out_col[e.row] += minus_i_times(e.value, rho_col[e.col]);
  }
  for (const auto& e : hamiltonian_) {
    Complex* out_col = out.col(e.col).data();
    const Complex* rho_col = rho.col(e.row).data();
    for (int r = 0; r < dim_; ++r) out_col[r] -= minus_i_times(e.value, rho_col[r]);
  }
  // rate * L rho L^+ for L = sum |to><from|.
  for (const auto& jump : jumps_)
    for (auto [to_q, from_q] : jump.transitions)
      for (auto [to_p, from_p] : jump.transitions)
        out(to_p, to_q) += jump.rate * rho(from_p, from_q);
  return out;
}

DensityMatrix lindblad_rhs(const SystemParams& params, const DecayRates& rates,
                           const DensityMatrix& rho) {
  if (rho.n_cavities != params.n_cavities)
    throw std::invalid_argument("density matrix does not match the parameter basis");
  return {rho.n_cavities, Lindbladian(params, rates).apply(rho.matrix)};
}

namespace {

Eigen::MatrixXcd rk4(const Lindbladian& l, Eigen::MatrixXcd rho, double t, int steps) {
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Eigen::MatrixXcd k1 = l.apply(rho);
    const Eigen::MatrixXcd k2 = l.apply(rho + (0.5 * h) * k1);
    const Eigen::MatrixXcd k3 = l.apply(rho + (0.5 * h) * k2);
    const Eigen::MatrixXcd k4 = l.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }
  return rho;
}

}  // namespace

DensityMatrix integrate(const SystemParams& params, const DecayRates& rates,
                        const DensityMatrix& rho0, double t,
                        const IntegratorOptions& options, IntegrationReport* report) {
  if (t < 0.0) throw std::invalid_argument("integration time must be >= 0");
  if (rho0.n_cavities != params.n_cavities ||
      rho0.matrix.rows() != Basis(params.n_cavities).size())
    throw std::invalid_argument("density matrix does not match the parameter basis");
  const Lindbladian l(params, rates);
  if (t == 0.0) {
    if (report) *report = {0, 0.0};
    return rho0;
  }

  int steps = options.initial_steps;
  if (steps <= 0)
    steps = std::max(8, static_cast<int>(std::ceil(t * l.rate_bound() / 0.25)));

  Eigen::MatrixXcd coarse = rk4(l, rho0.matrix, t, steps);
  for (int d = 0; d < options.max_doublings; ++d) {
    steps *= 2;
    Eigen::MatrixXcd fine = rk4(l, rho0.matrix, t, steps);
    const double change = (fine - coarse).cwiseAbs().maxCoeff();
    if (change < options.tolerance) {
      if (report) *report = {steps, change};
      return {rho0.n_cavities, std::move(fine)};
    }
    coarse = std::move(fine);
  }
  throw ConvergenceError("master-equation integration did not converge in " +
                         std::to_string(options.max_doublings) + " step doublings");
}

double dissipative_fidelity(const SystemParams& params, const DecayRates& rates,
                            const ClassicalBits& bits, const IntegratorOptions& options) {
  params.validate();
  const double t = params.transfer_time();
  const auto rho0 = DensityMatrix::pure(encode(initial_state(params.n_cavities), bits));
  const auto rho = integrate(params, rates, rho0, t, options);
  const Eigen::VectorXcd target = frame_phases(params, t).conjugate().cwiseProduct(
      target_state(params.n_cavities, bits).amplitudes);
  const Complex f = target.dot(rho.matrix * target);
  return std::clamp(f.real(), 0.0, 1.0);
}

std::array<double, 4> dissipative_fidelities(const SystemParams& params,
                                             const DecayRates& rates,
                                             const IntegratorOptions& options) {
  std::array<double, 4> out{};
  for (const auto& bits : all_bit_pairs())
    out[bits.index()] = dissipative_fidelity(params, rates, bits, options);
  return out;
}

}  // namespace qdc
