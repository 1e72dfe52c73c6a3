#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdc/open_system.hpp"

namespace {

using qdc::Complex;
using qdc::DecayRates;
using qdc::DensityMatrix;
using qdc::StateVector;
using qdc::SystemParams;

Eigen::MatrixXcd random_density(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(gen), g(gen));
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

TEST(DecayRates, Validation) {
  EXPECT_THROW((DecayRates{-1.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DecayRates{0.0, std::nan("")}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((DecayRates{0.0, 0.0}.validate()));
}

TEST(JumpOperators, OrderAndShape) {
  const auto ops = qdc::jump_operators(3, {0.5, 0.1});
  ASSERT_EQ(ops.size(), 6u);
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(ops[k].rate, 0.5);
  for (int k = 3; k < 6; ++k) EXPECT_DOUBLE_EQ(ops[k].rate, 0.1);
  EXPECT_EQ(ops[5].transitions.size(), 6u);
}

TEST(Lindbladian, MatchesDenseSuperoperator) {
  std::mt19937_64 gen(1);
  for (int n = 1; n <= 3; ++n) {
    const auto p = SystemParams::engineered(n, 1.0, 0.0, 0.0);
    const DecayRates r{0.3, 0.07};
    const auto sup = oracle::liouvillian(oracle::hamiltonian(n, oracle::engineered_chain(n, 1.0)),
                                         oracle::jumps(n, r.kappa, r.gamma));
    const auto rho = random_density(oracle::dim(n), gen);
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    const Eigen::VectorXcd ref = sup * v;
    const auto got = qdc::lindblad_rhs(p, r, {n, rho}).matrix;
    const Eigen::VectorXcd gv = Eigen::Map<const Eigen::VectorXcd>(got.data(), got.size());
    EXPECT_LT((gv - ref).cwiseAbs().maxCoeff(), 1e-13) << "N=" << n;
  }
}

TEST(Lindbladian, TraceFreeDerivative) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const auto p = SystemParams::engineered(n, 1.0, 0.0, 0.0);
    const auto rho = random_density(2 * (n + 3), gen);
    const auto d = qdc::lindblad_rhs(p, {u(gen), u(gen)}, {n, rho});
    EXPECT_LT(std::abs(d.trace()), 1e-13);
  }
}

TEST(Integrate, MatchesSuperoperatorExponential) {
  const int n = 2;
  auto p = SystemParams::engineered(n, 1.0, 0.0, 0.0);
  p.inter_cavity[0] = 1.3;
  const DecayRates r{0.2, 0.05};
  std::vector<double> chain{p.g, p.inter_cavity[0], p.g};
  const auto sup =
      oracle::liouvillian(oracle::hamiltonian(n, chain), oracle::jumps(n, r.kappa, r.gamma));
  std::mt19937_64 gen(3);
  const auto rho0 = random_density(oracle::dim(n), gen);
  const auto ref = oracle::evolve_density(sup, rho0, 2.1);
  const auto got = qdc::integrate(p, r, {n, rho0}, 2.1);
  EXPECT_LT((got.matrix - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Integrate, ZeroRatesReproducePureEvolution) {
  std::mt19937_64 gen(29);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 6; ++n) {
    const auto p = SystemParams::engineered(n, 1.0, 0.0, 0.0);
    StateVector s = StateVector::zero(n);
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) s.amplitudes[i] = Complex(g(gen), g(gen));
    s.amplitudes.normalize();
    const double t = 1.7;
    const auto rho = qdc::integrate(p, {0.0, 0.0}, DensityMatrix::pure(s), t);
    const qdc::Propagator prop(p);
    const auto psi = prop.apply_interaction(s, t);
    EXPECT_LT((rho.matrix - DensityMatrix::pure(psi).matrix).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Integrate, ReportAndConvergenceFailure) {
  const auto p = SystemParams::engineered(3, 1.0, 0.0, 0.0);
  const auto rho0 = DensityMatrix::pure(qdc::initial_state(3));
  qdc::IntegrationReport rep;
  qdc::integrate(p, {0.1, 0.1}, rho0, 1.0, {}, &rep);
  EXPECT_GT(rep.steps, 0);
  EXPECT_LT(rep.step_change, 1e-9);
  qdc::IntegratorOptions tight;
  tight.tolerance = 1e-30;
  tight.max_doublings = 2;
  EXPECT_THROW(qdc::integrate(p, {0.1, 0.1}, rho0, 1.0, tight), qdc::ConvergenceError);
  EXPECT_THROW(qdc::integrate(p, {0.1, 0.1}, rho0, -1.0), std::invalid_argument);
  EXPECT_THROW(qdc::integrate(p, {0.1, 0.1}, DensityMatrix::pure(qdc::initial_state(2)), 1.0),
               std::invalid_argument);
}

TEST(Integrate, StepChangeBoundsTheError) {
  const int n = 2;
  const auto p = SystemParams::engineered(n, 1.0, 0.0, 0.0);
  const DecayRates r{0.4, 0.2};
  const auto rho0 = DensityMatrix::pure(qdc::initial_state(n));
  const auto sup = oracle::liouvillian(oracle::hamiltonian(n, oracle::engineered_chain(n, 1.0)),
                                       oracle::jumps(n, r.kappa, r.gamma));
  const auto ref = oracle::evolve_density(sup, rho0.matrix, p.transfer_time());
  qdc::IntegratorOptions loose;
  loose.tolerance = 1e-5;
  qdc::IntegrationReport rep;
  const auto got = qdc::integrate(p, r, rho0, p.transfer_time(), loose, &rep);
  EXPECT_LT((got.matrix - ref).cwiseAbs().maxCoeff(), rep.step_change);
}

TEST(DissipativeFidelity, ZeroRatesGiveUnity) {
  const auto p = SystemParams::engineered(4, 1.0, 9995.0, 10000.0);
  for (double f : qdc::dissipative_fidelities(p, {0.0, 0.0})) EXPECT_NEAR(f, 1.0, 1e-8);
}

TEST(DissipativeFidelity, DecreasesWithCavityLoss) {
  const auto p = SystemParams::engineered(4, 1.0, 9995.0, 10000.0);
  double last = 1.0;
  for (double kappa : {0.0, 0.01, 0.05, 0.2}) {
    const auto f = qdc::dissipative_fidelities(p, {kappa, 0.005});
    EXPECT_LE(f[0], last + 1e-12);
    last = f[0];
  }
  EXPECT_LT(last, 0.99);
}

TEST(DissipativeFidelity, MatchesSuperoperatorOracle) {
  const int n = 2;
  const auto p = SystemParams::engineered(n, 1.0, 4.0 * 3 - 3, 4.0 * 2);
  const DecayRates r{0.1, 0.03};
  const auto sup = oracle::liouvillian(oracle::hamiltonian(n, oracle::engineered_chain(n, 1.0)),
                                       oracle::jumps(n, r.kappa, r.gamma));
  const double t = p.transfer_time();
  for (const auto& bits : qdc::all_bit_pairs()) {
    const auto rho0 = DensityMatrix::pure(qdc::encode(qdc::initial_state(n), bits));
    const auto rho = oracle::evolve_density(sup, rho0.matrix, t);
    // Lab-frame target pulled back into the rotating frame.
    const Eigen::VectorXcd target =
        oracle::phases(n, p.omega, p.omega_q3, t).conjugate().cwiseProduct(
            qdc::target_state(n, bits).amplitudes);
    const double ref = target.dot(rho * target).real();
    EXPECT_NEAR(qdc::dissipative_fidelity(p, r, bits), ref, 1e-9);
  }
}

}  // namespace
