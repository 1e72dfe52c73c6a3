#include "qdc/evolve.hpp"

#include <cmath>
#include <stdexcept>

namespace qdc {

namespace {

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// x^e for small nonnegative integer e; 0^0 = 1.
double ipow(double x, int e) {
  double r = 1.0;
  double b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// (-i)^p for any integer p.
Complex minus_i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void check_closed_form_size(int n_cavities) {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  if (n_cavities > kMaxClosedFormCavities)
    throw std::invalid_argument("closed form limited to N + 1 <= 170");
}

void check_state(const SystemParams& params, const StateVector& s) {
  if (s.n_cavities != params.n_cavities ||
      s.amplitudes.size() != Basis(params.n_cavities).size())
    throw std::invalid_argument("state does not match the parameter basis");
}

}  // namespace

StateVector StateVector::zero(int n_cavities) {
  return {n_cavities, Eigen::VectorXcd::Zero(Basis(n_cavities).size())};
}

StateVector StateVector::basis(int n_cavities, const BasisState& state) {
  auto v = zero(n_cavities);
  v[state] = 1.0;
  return v;
}

Complex& StateVector::operator[](const BasisState& s) {
  return amplitudes[Basis(n_cavities).index(s)];
}

Complex StateVector::operator[](const BasisState& s) const {
  return amplitudes[Basis(n_cavities).index(s)];
}

Complex StateVector::inner(const StateVector& other) const {
  return amplitudes.dot(other.amplitudes);
}

TwoModeState TwoModeState::fock(int n_quanta, int n) {
  if (n < 0 || n > n_quanta) throw std::out_of_range("Fock index out of range");
  TwoModeState s{n_quanta, Eigen::VectorXcd::Zero(n_quanta + 1)};
  s.amplitudes[n] = 1.0;
  return s;
}

Complex amplitude_ck(int n_cavities, int k, double jt) {
  check_closed_form_size(n_cavities);
  const int n1 = n_cavities + 1;
  if (k < 0 || k > n1) throw std::out_of_range("k must lie in 0..N+1");
  const double log_binom =
      log_factorial(n1) - log_factorial(n1 - k) - log_factorial(k);
  const double mag = std::exp(0.5 * log_binom) * ipow(std::cos(jt), n1 - k) *
                     ipow(std::sin(jt), k);
  return mag * minus_i_pow(k);
}

double transfer_probability(int n_cavities, double jt) {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  return ipow(std::sin(jt), 2 * (n_cavities + 1));
}

Eigen::MatrixXcd closed_form_propagator(int n_cavities, double jt) {
  check_closed_form_size(n_cavities);
  const int n1 = n_cavities + 1;
  const double c = std::cos(jt);
  const double s = std::sin(jt);
  Eigen::MatrixXcd u(n1 + 1, n1 + 1);
  for (int k = 0; k <= n1; ++k) u(k, 0) = amplitude_ck(n_cavities, k, jt);
  // Remaining columns: rotation by 2Jt of a spin (N+1)/2 about x, written
  // with the Wigner small-d sum in site labels (m = (N+1)/2 - site).
  for (int from = 1; from <= n1; ++from) {
    for (int to = 0; to <= n1; ++to) {
      const double log_norm =
          0.5 * (log_factorial(n1 - to) + log_factorial(to) +
                 log_factorial(n1 - from) + log_factorial(from));
      double sum = 0.0;
      const int lo = std::max(0, to - from);
      const int hi = std::min(n1 - from, to);
      for (int r = lo; r <= hi; ++r) {
        const double log_den = log_factorial(n1 - from - r) + log_factorial(r) +
                               log_factorial(from - to + r) +
                               log_factorial(to - r);
        const double sign = ((from - to + r) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_norm - log_den) *
               ipow(c, n1 + to - from - 2 * r) * ipow(s, from - to + 2 * r);
      }
      u(to, from) = minus_i_pow(to - from) * sum;
    }
  }
  return u;
}

StateVector evolve_closed_form(const SystemParams& params,
                               const StateVector& initial, double t) {
  params.validate();
  check_state(params, initial);
  if (!params.is_engineered())
    throw std::invalid_argument(
        "closed-form evolution requires the engineered couplings");
  const Basis basis(params.n_cavities);
  const int chain = params.n_cavities + 2;
  const Eigen::MatrixXcd u =
      closed_form_propagator(params.n_cavities, params.j_unit * t);
  StateVector out = StateVector::zero(params.n_cavities);
  for (int q = 0; q < 2; ++q) {
    for (int to = 0; to < chain; ++to) {
      Complex acc = 0.0;
      for (int from = 0; from < chain; ++from)
        acc += u(to, from) * initial.amplitudes[Basis::index_of(from, q)];
      out.amplitudes[Basis::index_of(to, q)] = acc;
    }
    const int g = Basis::index_of(basis.ground_site(), q);
    out.amplitudes[g] = initial.amplitudes[g];
  }
  out.amplitudes.array() *= frame_phases(params, t).array();
  return out;
}

Propagator::Propagator(const SystemParams& params) : params_(params) {
  const Hamiltonian h = build_hamiltonian(params_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.array_block());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the Hamiltonian failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd Propagator::array_unitary(double t) const {
  const Eigen::VectorXcd phases =
      (eigenvalues_.cast<Complex>() * Complex(0.0, -t)).array().exp();
  const Eigen::MatrixXcd v = eigenvectors_.cast<Complex>();
  return v * phases.asDiagonal() * v.transpose();
}

StateVector Propagator::apply_interaction(const StateVector& initial,
                                          double t) const {
  check_state(params_, initial);
  const int m = static_cast<int>(eigenvalues_.size());
  const Eigen::MatrixXcd u = array_unitary(t);
  StateVector out = StateVector::zero(params_.n_cavities);
  for (int q = 0; q < 2; ++q) {
    Eigen::VectorXcd block(m);
    for (int a = 0; a < m; ++a) block[a] = initial.amplitudes[Basis::index_of(a, q)];
    const Eigen::VectorXcd evolved = u * block;
    for (int a = 0; a < m; ++a) out.amplitudes[Basis::index_of(a, q)] = evolved[a];
  }
  return out;
}

StateVector Propagator::apply(const StateVector& initial, double t) const {
  StateVector out = apply_interaction(initial, t);
  out.amplitudes.array() *= frame_phases(params_, t).array();
  return out;
}

StateVector evolve_matrix_exp(const SystemParams& params,
                              const StateVector& initial, double t) {
  return Propagator(params).apply(initial, t);
}

TwoModeState evolve_two_mode(int n_quanta, const TwoModeState& initial,
                             double jt) {
  if (n_quanta < 1) throw std::invalid_argument("n_quanta must be >= 1");
  if (n_quanta > kMaxClosedFormCavities + 1)
    throw std::invalid_argument("two-mode expansion limited to 170 quanta");
  if (initial.n_quanta != n_quanta || initial.amplitudes.size() != n_quanta + 1)
    throw std::invalid_argument("two-mode state does not hold n_quanta quanta");
  const double c = std::cos(jt);
  const double s = std::sin(jt);
  TwoModeState out{n_quanta, Eigen::VectorXcd::Zero(n_quanta + 1)};
  // |A, B> with A = n_quanta - n, B = n. Each of the A factors of the
  // evolved a1^+ contributes c a1^+ or -i s a2^+; each of the B factors of
  // a2^+ contributes c a2^+ or -i s a1^+. k picks the a2^+ terms of the
  // first product, l the a1^+ terms of the second.
  for (int n = 0; n <= n_quanta; ++n) {
    const Complex a_in = initial.amplitudes[n];
    if (a_in == Complex(0.0, 0.0)) continue;
    const int a = n_quanta - n;
    const int b = n;
    for (int k = 0; k <= a; ++k) {
      for (int l = 0; l <= b; ++l) {
        const int target = n + k - l;  // quanta in mode 2 afterwards
        const double log_coef =
            log_factorial(a) - log_factorial(k) - log_factorial(a - k) +
            log_factorial(b) - log_factorial(l) - log_factorial(b - l) +
            0.5 * (log_factorial(n_quanta - target) + log_factorial(target) -
                   log_factorial(a) - log_factorial(b));
        const double mag = std::exp(log_coef) * ipow(c, n_quanta - (k + l)) *
                           ipow(s, k + l);
        out.amplitudes[target] += a_in * mag * minus_i_pow(k + l);
      }
    }
  }
  return out;
}

TwoModeState to_two_mode(const StateVector& state, bool q3_excited) {
  const int n1 = state.n_cavities + 1;
  TwoModeState out{n1, Eigen::VectorXcd(n1 + 1)};
  for (int site = 0; site <= n1; ++site)
    out.amplitudes[site] = state.amplitudes[Basis::index_of(site, q3_excited)];
  return out;
}

}  // namespace qdc
