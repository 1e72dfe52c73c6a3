#include "qdc/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdc {

namespace {

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Couplings default_couplings(int n_cavities, double j_unit) {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  if (!(j_unit > 0.0)) throw std::invalid_argument("j_unit must be > 0");
  const double n1 = n_cavities + 1;
  Couplings c{std::sqrt(n1) * j_unit, {}};
  c.inter_cavity.reserve(static_cast<std::size_t>(n_cavities - 1));
  for (int k = 1; k <= n_cavities - 1; ++k)
    c.inter_cavity.push_back(std::sqrt(double(k + 1) * (n1 - k)) * j_unit);
  return c;
}

SystemParams SystemParams::engineered(int n_cavities, double j_unit,
                                      double omega, double omega_q3) {
  auto c = default_couplings(n_cavities, j_unit);
  SystemParams p;
  p.n_cavities = n_cavities;
  p.j_unit = j_unit;
  p.omega = omega;
  p.omega_q3 = omega_q3;
  p.g = c.g;
  p.inter_cavity = std::move(c.inter_cavity);
  return p;
}

void SystemParams::validate() const {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  if (!(j_unit > 0.0) || !std::isfinite(j_unit))
    throw std::invalid_argument("j_unit must be finite and > 0");
  if (!(omega >= 0.0) || !(omega_q3 >= 0.0) || !std::isfinite(omega) ||
      !std::isfinite(omega_q3))
    throw std::invalid_argument("resonance frequencies must be finite and >= 0");
  if (!(g > 0.0) || !std::isfinite(g))
    throw std::invalid_argument("g must be finite and > 0");
  if (g_q2 && (!(*g_q2 > 0.0) || !std::isfinite(*g_q2)))
    throw std::invalid_argument("g_q2 must be finite and > 0");
  if (inter_cavity.size() != static_cast<std::size_t>(n_cavities - 1))
    throw std::invalid_argument("inter_cavity must hold n_cavities - 1 couplings");
  for (double jk : inter_cavity)
    if (!(jk > 0.0) || !std::isfinite(jk))
      throw std::invalid_argument("inter-cavity couplings must be finite and > 0");
  if (!cavity_detuning.empty() &&
      cavity_detuning.size() != static_cast<std::size_t>(n_cavities))
    throw std::invalid_argument("cavity_detuning must be empty or hold n_cavities entries");
  for (double d : cavity_detuning)
    if (!std::isfinite(d)) throw std::invalid_argument("cavity detuning must be finite");
}

bool SystemParams::is_engineered() const {
  if (n_cavities < 1 || !(j_unit > 0.0)) return false;
  for (double d : cavity_detuning)
    if (d != 0.0) return false;
  const auto c = default_couplings(n_cavities, j_unit);
  if (!close_rel(g, c.g) || !close_rel(q2_coupling(), c.g)) return false;
  if (inter_cavity.size() != c.inter_cavity.size()) return false;
  for (std::size_t k = 0; k < inter_cavity.size(); ++k)
    if (!close_rel(inter_cavity[k], c.inter_cavity[k])) return false;
  return true;
}

double SystemParams::transfer_time() const {
  return std::numbers::pi / (2.0 * j_unit);
}

std::string to_string(const BasisState& s) {
  std::string out;
  switch (s.sector) {
    case Sector::Q1Excited: out = "Q1Excited"; break;
    case Sector::Photon: out = "Photon(" + std::to_string(s.photon_site) + ")"; break;
    case Sector::Q2Excited: out = "Q2Excited"; break;
    case Sector::ArrayGround: out = "ArrayGround"; break;
  }
  return out + (s.q3_excited ? ",e" : ",g");
}

Basis::Basis(int n_cavities) : n_(n_cavities) {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
}

int Basis::site(const BasisState& s) const {
  switch (s.sector) {
    case Sector::Q1Excited: return q1_site();
    case Sector::Photon:
      if (s.photon_site < 1 || s.photon_site > n_)
        throw std::out_of_range("photon site outside 1..N");
      return s.photon_site;
    case Sector::Q2Excited: return q2_site();
    case Sector::ArrayGround: return ground_site();
  }
  throw std::logic_error("unknown sector");
}

BasisState Basis::site_state(int site, bool q3) const {
  if (site < 0 || site >= sites()) throw std::out_of_range("site out of range");
  if (site == q1_site()) return BasisState::q1(q3);
  if (site == q2_site()) return BasisState::q2(q3);
  if (site == ground_site()) return BasisState::ground(q3);
  return BasisState::photon(site, q3);
}

int Basis::index(const BasisState& s) const {
  return index_of(site(s), s.q3_excited);
}

BasisState Basis::state(int index) const {
  if (index < 0 || index >= size()) throw std::out_of_range("basis index out of range");
  return site_state(index / 2, (index % 2) == 1);
}

Eigen::MatrixXcd Hamiltonian::matrix() const {
  const int m = static_cast<int>(block_.rows());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int q = 0; q < 2; ++q)
        h(2 * a + q, 2 * b + q) = block_(a, b);
  return h;
}

std::vector<double> Hamiltonian::chain_couplings() const {
  std::vector<double> out;
  for (int s = 0; s + 1 <= n_ + 1; ++s) out.push_back(block_(s, s + 1));
  return out;
}

Hamiltonian build_hamiltonian(const SystemParams& params) {
  params.validate();
  const int n = params.n_cavities;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + 3, n + 3);
  // Chain q1 - cavity 1 - ... - cavity N - q2; ArrayGround (site N+2) is
  // left as a zero row and column.
  auto link = [&](int a, int b, double v) {
    block(a, b) = v;
    block(b, a) = v;
  };
  link(0, 1, params.g);
  for (int k = 1; k <= n - 1; ++k) link(k, k + 1, params.inter_cavity[k - 1]);
  link(n, n + 1, params.q2_coupling());
  for (int k = 1; k <= static_cast<int>(params.cavity_detuning.size()); ++k)
    block(k, k) = params.cavity_detuning[k - 1];
  return Hamiltonian(n, std::move(block));
}

Complex frame_phase(const SystemParams& params, double t, const BasisState& s) {
  double angle = 0.0;
  if (s.array_excited()) angle += params.omega * t;
  if (s.q3_excited) angle += params.omega_q3 * t;
  return std::polar(1.0, -angle);
}

Eigen::VectorXcd frame_phases(const SystemParams& params, double t) {
  const Basis basis(params.n_cavities);
  Eigen::VectorXcd out(basis.size());
  // Four distinct values; evaluate each once so identical states share
  // bit-identical phases.
  const Complex ground_e = frame_phase(params, t, BasisState::ground(true));
  const Complex excited_g = frame_phase(params, t, BasisState::q1(false));
  const Complex excited_e = frame_phase(params, t, BasisState::q1(true));
  for (int i = 0; i < basis.size(); ++i) {
    const BasisState s = basis.state(i);
    if (!s.array_excited())
      out[i] = s.q3_excited ? ground_e : Complex(1.0, 0.0);
    else
      out[i] = s.q3_excited ? excited_e : excited_g;
  }
  return out;
}

}  // namespace qdc
