#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdc/protocol.hpp"

namespace {

using qdc::BasisState;
using qdc::ClassicalBits;
using qdc::Complex;
using qdc::Engine;
using qdc::StateVector;
using qdc::SystemParams;

constexpr double kPi = std::numbers::pi;
const double kR = 1.0 / std::sqrt(2.0);

SystemParams ideal_n4() { return SystemParams::engineered(4, 1.0, 9995.0, 10000.0); }

double max_diff(const StateVector& a, const StateVector& b) {
  return (a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff();
}

TEST(ClassicalBits, TableOrder) {
  const auto all = qdc::all_bit_pairs();
  EXPECT_EQ(all[0], ClassicalBits(0, 0));
  EXPECT_EQ(all[1], ClassicalBits(1, 0));
  EXPECT_EQ(all[2], ClassicalBits(0, 1));
  EXPECT_EQ(all[3], ClassicalBits(1, 1));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(ClassicalBits::from_index(i).index(), i);
  EXPECT_THROW(ClassicalBits(2, 0), std::invalid_argument);
  EXPECT_THROW(ClassicalBits::from_index(4), std::out_of_range);
}

TEST(InitialState, AmplitudesAndEntanglement) {
  const auto s = qdc::initial_state(6);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s[BasisState::ground(false)] - kR), 0.0, 1e-15);
  const auto rho = qdc::reduced_pair(s, qdc::QubitPair::Q1Q3);
  EXPECT_NEAR(qdc::concurrence(rho), 1.0, 1e-12);
  EXPECT_NEAR(oracle::concurrence(rho), 1.0, 1e-9);
}

TEST(Encode, MatchesEncodedStates) {
  const auto s = qdc::initial_state(3);
  EXPECT_EQ(max_diff(qdc::encode(s, {0, 0}), s), 0.0);

  StateVector e10 = StateVector::zero(3);
  e10[BasisState::q1(true)] = kR;
  e10[BasisState::ground(false)] = -kR;
  EXPECT_LT(max_diff(qdc::encode(s, {1, 0}), e10), 1e-15);

  StateVector e11 = StateVector::zero(3);
  e11[BasisState::ground(true)] = kR;
  e11[BasisState::q1(false)] = -kR;
  EXPECT_LT(max_diff(qdc::encode(s, {1, 1}), e11), 1e-15);
}

TEST(Encode, PauliInvolutionsPreserveNorm) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    StateVector s = StateVector::zero(4);
    for (bool q3 : {false, true}) {
      s[BasisState::q1(q3)] = Complex(g(gen), g(gen));
      s[BasisState::ground(q3)] = Complex(g(gen), g(gen));
    }
    s.amplitudes.normalize();
    for (const auto& bits : qdc::all_bit_pairs()) EXPECT_NEAR(qdc::encode(s, bits).norm(), 1.0, 1e-14);
    EXPECT_LT(max_diff(qdc::apply_sigma_x_q1(qdc::apply_sigma_x_q1(s)), s), 1e-15);
    EXPECT_LT(max_diff(qdc::apply_sigma_z_q1(qdc::apply_sigma_z_q1(s)), s), 1e-15);
  }
}

TEST(Encode, SigmaXRejectsMidTransferStates) {
  StateVector s = StateVector::zero(3);
  s[BasisState::photon(2, false)] = 1.0;
  EXPECT_THROW(qdc::apply_sigma_x_q1(s), std::invalid_argument);
  EXPECT_THROW(qdc::encode(s, {0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(qdc::encode(s, {1, 0}));
}

TEST(PhaseCondition, IdealPoint) {
  const auto c = qdc::phase_condition(ideal_n4());
  EXPECT_TRUE(c.compliant);
  EXPECT_EQ(c.n, 2500);
  EXPECT_EQ(c.m, 2500);
}

TEST(PhaseCondition, ViolationReportsNearest) {
  auto p = ideal_n4();
  p.omega = 9996.0;
  const auto c = qdc::phase_condition(p);
  EXPECT_FALSE(c.compliant);
  EXPECT_DOUBLE_EQ(c.nearest_omega, 9995.0);
  EXPECT_DOUBLE_EQ(c.nearest_omega_q3, 10000.0);
}

TEST(PhaseCondition, NegativeSolutionFlagged) {
  auto p = SystemParams::engineered(10, 1.0, 0.0, 0.0);
  p.omega = -7.0;  // bypasses validation on purpose
  const auto c = qdc::phase_condition(p);
  EXPECT_TRUE(c.compliant);
  EXPECT_EQ(c.n, 1);
  EXPECT_TRUE(c.unphysical);
  EXPECT_GE(c.nearest_omega, 0.0);
  EXPECT_DOUBLE_EQ(c.nearest_omega, 1.0);
}

TEST(TargetState, BellStates) {
  StateVector t00 = StateVector::zero(2);
  t00[BasisState::ground(false)] = kR;
  t00[BasisState::q2(true)] = kR;
  EXPECT_LT(max_diff(qdc::target_state(2, {0, 0}), t00), 1e-15);
  StateVector t01 = StateVector::zero(2);
  t01[BasisState::q2(false)] = kR;
  t01[BasisState::ground(true)] = kR;
  EXPECT_LT(max_diff(qdc::target_state(2, {0, 1}), t01), 1e-15);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex o = qdc::target_state(2, ClassicalBits::from_index(i))
                            .inner(qdc::target_state(2, ClassicalBits::from_index(j)));
      EXPECT_NEAR(std::abs(o), i == j ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Decode, BellStatesReturnTheirBits) {
  for (const auto& bits : qdc::all_bit_pairs()) {
    const auto d = qdc::decode(qdc::target_state(5, bits));
    for (int i = 0; i < 4; ++i)
      EXPECT_NEAR(d.probabilities[i], i == bits.index() ? 1.0 : 0.0, 1e-15);
    EXPECT_FALSE(d.leaked);
  }
}

TEST(Decode, GroundInputSplitsEvenly) {
  // H|g> = (|g> + |e>)/sqrt2 on q2 with q3 = g: outcomes (0,0) and (1,0).
  const auto d = qdc::decode(StateVector::basis(3, BasisState::ground(false)));
  EXPECT_NEAR(d.probabilities[ClassicalBits(0, 0).index()], 0.5, 1e-15);
  EXPECT_NEAR(d.probabilities[ClassicalBits(1, 0).index()], 0.5, 1e-15);
  EXPECT_NEAR(d.probabilities[ClassicalBits(0, 1).index()], 0.0, 1e-15);
  EXPECT_NEAR(d.probabilities[ClassicalBits(1, 1).index()], 0.0, 1e-15);
}

TEST(Decode, LeakageReported) {
  StateVector s = qdc::target_state(3, {1, 1});
  s[BasisState::photon(1, false)] = 0.1;
  s.amplitudes.normalize();
  const auto d = qdc::decode(s);
  EXPECT_TRUE(d.leaked);
  EXPECT_NEAR(d.leakage, 0.01 / 1.01, 1e-12);
  EXPECT_NEAR(d.probabilities[3], 1.0, 1e-12);
  EXPECT_THROW(qdc::decode(StateVector::basis(3, BasisState::photon(2, true))),
               std::invalid_argument);
}

TEST(Protocol, IdealFidelityIsUnity) {
  for (auto engine : {Engine::ClosedForm, Engine::MatrixExp})
    for (const auto& bits : qdc::all_bit_pairs()) {
      const auto r = qdc::run_protocol(ideal_n4(), bits, engine);
      EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
      EXPECT_NEAR(r.success_probability, 1.0, 1e-9);
      EXPECT_NEAR(r.residual_phase, 0.0, 1e-6);
      double sum = 0.0;
      for (double p : r.decoded_probabilities) sum += p;
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Protocol, QuarterAtTimeZero) {
  const auto r = qdc::run_protocol(ideal_n4(), {0, 0}, Engine::ClosedForm, 0.0);
  EXPECT_NEAR(r.fidelity, 0.25, 1e-15);
}

TEST(Protocol, PairsAgreeAlongTheCurve) {
  std::vector<double> times;
  for (int i = 0; i < 200; ++i) times.push_back(kPi * i / 199.0);
  for (const auto& row : qdc::fidelity_curve(ideal_n4(), times, Engine::ClosedForm)) {
    EXPECT_NEAR(row[0], row[1], 1e-12);
    EXPECT_NEAR(row[2], row[3], 1e-12);
  }
}

TEST(Protocol, CurvePeriodicForCompliantFrequencies) {
  const auto p = SystemParams::engineered(3, 1.0, 4.0 * 9 - 4, 4.0 * 6);
  std::vector<double> times, shifted;
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int i = 0; i < 50; ++i) {
    times.push_back(u(gen));
    shifted.push_back(times.back() + 2.0 * kPi);
  }
  const auto a = qdc::fidelity_curve(p, times, Engine::MatrixExp);
  const auto b = qdc::fidelity_curve(p, shifted, Engine::MatrixExp);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(a[i][k], b[i][k], 1e-9);
}

TEST(Protocol, PhaseViolationLowersFidelity) {
  auto p = ideal_n4();
  p.omega = 9996.0;
  EXPECT_LT(qdc::run_protocol(p, {0, 0}, Engine::ClosedForm).fidelity, 0.99);
}

TEST(Concurrence, SwappingAtTransferTime) {
  const auto p = ideal_n4();
  for (const auto& bits : qdc::all_bit_pairs()) {
    const auto out = qdc::evolve_closed_form(p, qdc::encode(qdc::initial_state(4), bits),
                                             p.transfer_time());
    const auto r13 = qdc::reduced_pair(out, qdc::QubitPair::Q1Q3);
    const auto r23 = qdc::reduced_pair(out, qdc::QubitPair::Q2Q3);
    EXPECT_LT(qdc::concurrence(r13), 1e-9);
    EXPECT_GT(qdc::concurrence(r23), 1.0 - 1e-9);
    EXPECT_NEAR(oracle::concurrence(r23), 1.0, 1e-7);
  }
}

TEST(Concurrence, AgreesWithOracleOnMixedStates) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Complex(g(gen), g(gen));
    // Low-rank mixtures so both entangled and separable states appear.
    Eigen::Matrix<std::complex<double>, 4, 2> b = a.leftCols<2>();
    b.col(1) *= 0.3 * (trial % 3);
    Eigen::Matrix4cd rho = b * b.adjoint();
    rho /= rho.trace();
    EXPECT_NEAR(qdc::concurrence(rho), oracle::concurrence(rho), 1e-7);
  }
}

TEST(ReducedPair, TraceAndHermiticity) {
  std::mt19937_64 gen(13);
  std::normal_distribution<double> g;
  StateVector s = StateVector::zero(4);
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) s.amplitudes[i] = Complex(g(gen), g(gen));
  s.amplitudes.normalize();
  for (auto pair : {qdc::QubitPair::Q1Q3, qdc::QubitPair::Q2Q3}) {
    const auto rho = qdc::reduced_pair(s, pair);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
    EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

}  // namespace
