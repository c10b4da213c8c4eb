#include "josim/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace josim {

namespace {

Eigen::MatrixXd dense_matrix(const TwoModeHamiltonian& h) {
  const int dim = h.n_atoms + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = h.diagonal(k);
  for (int k = 0; k + 1 < dim; ++k) {
    m(k, k + 1) = h.off_diagonal(k);
    m(k + 1, k) = h.off_diagonal(k);
  }
  return m;
}

void check_normalized(const FockVector& state) {
  if (std::abs(state.amplitudes.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fock vector is not unit norm");
}

}  // namespace

TwoModeHamiltonian build_hamiltonian(int n_atoms, double hbar,
                                     double lambda_coupling, double u_aa,
                                     double u_ab, double delta_e) {
  if (n_atoms < 1 || n_atoms > 5000)
    throw std::invalid_argument("atom number out of the dense-feasible range");
  TwoModeHamiltonian h;
  h.n_atoms = n_atoms;
  h.hbar = hbar;
  h.lambda_coupling = lambda_coupling;
  h.u_aa = u_aa;
  h.u_ab = u_ab;
  h.delta_e = delta_e;
  h.diagonal.resize(n_atoms + 1);
  h.off_diagonal.resize(n_atoms);
  const double n = n_atoms;
  for (int k = 0; k <= n_atoms; ++k) {
    const double na = k, nb = n - k;
    h.diagonal(k) = 0.5 * u_aa * (na * (na - 1) + nb * (nb - 1)) +
                    u_ab * na * nb + 0.5 * delta_e * (na - nb);
  }
  for (int k = 0; k < n_atoms; ++k)
    h.off_diagonal(k) = -hbar * lambda_coupling * std::sqrt((k + 1) * (n - k));
  return h;
}

FockVector coherent_state(int n_atoms, double theta, double phi) {
  FockVector s;
  s.amplitudes.resize(n_atoms + 1);
  const double lc = std::log(std::cos(0.5 * theta));
  const double ls = std::log(std::sin(0.5 * theta));
  for (int k = 0; k <= n_atoms; ++k) {
    // sqrt(C(N,k)) cos^k sin^{N-k} e^{i (N-k) phi}, via log-gamma for N large
    // zero-power terms skipped so theta = 0 or pi do not produce 0 * log(0)
    const double log_amp = 0.5 * (std::lgamma(n_atoms + 1.0) -
                                  std::lgamma(k + 1.0) -
                                  std::lgamma(n_atoms - k + 1.0)) +
                           (k > 0 ? k * lc : 0.0) +
                           (k < n_atoms ? (n_atoms - k) * ls : 0.0);
    s.amplitudes(k) = std::polar(std::exp(log_amp), (n_atoms - k) * phi);
  }
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

FockVector fock_state(int n_atoms, int k) {
  if (k < 0 || k > n_atoms) throw std::invalid_argument("occupation out of range");
  FockVector s;
  s.amplitudes = Eigen::VectorXcd::Zero(n_atoms + 1);
  s.amplitudes(k) = 1.0;
  return s;
}

double visibility(const FockVector& state) {
  const int n = state.n_atoms();
  // <a^dag b> = sum_k sqrt((k+1)(N-k)) c_{k+1}^* c_k
  std::complex<double> adb(0, 0);
  for (int k = 0; k + 1 <= n; ++k)
    adb += std::sqrt(double(k + 1) * (n - k)) *
           std::conj(state.amplitudes(k + 1)) * state.amplitudes(k);
  return std::abs(adb) / (0.5 * n);
}

double expect_delta_n(const FockVector& state) {
  const int n = state.n_atoms();
  double e = 0;
  for (int k = 0; k <= n; ++k)
    e += (2.0 * k - n) * std::norm(state.amplitudes(k));
  return e;
}

double var_delta_n(const FockVector& state) {
  const int n = state.n_atoms();
  double e = 0, e2 = 0;
  for (int k = 0; k <= n; ++k) {
    const double d = 2.0 * k - n;
    const double p = std::norm(state.amplitudes(k));
    e += d * p;
    e2 += d * d * p;
  }
  return e2 - e * e;
}

double expect_energy(const FockVector& state, const TwoModeHamiltonian& h) {
  const int n = h.n_atoms;
  double e = 0;
  for (int k = 0; k <= n; ++k) e += h.diagonal(k) * std::norm(state.amplitudes(k));
  for (int k = 0; k < n; ++k)
    e += 2.0 * h.off_diagonal(k) *
         (std::conj(state.amplitudes(k)) * state.amplitudes(k + 1)).real();
  return e;
}

OracleTrajectory evolve_exact(const FockVector& state0,
                              const TwoModeHamiltonian& h,
                              const std::vector<double>& times) {
  if (state0.n_atoms() != h.n_atoms)
    throw std::invalid_argument("state/hamiltonian dimension mismatch");
  check_normalized(state0);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(h));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::VectorXcd coeffs = v.transpose() * state0.amplitudes;

  OracleTrajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd rotated(coeffs.size());
    for (int j = 0; j < coeffs.size(); ++j)
      rotated(j) = coeffs(j) * std::polar(1.0, -w(j) * t / h.hbar);
    FockVector s;
    s.amplitudes = v * rotated;
    traj.delta_n.push_back(expect_delta_n(s));
    traj.var_delta_n.push_back(var_delta_n(s));
    traj.visibility.push_back(visibility(s));
    traj.energy.push_back(expect_energy(s, h));
    traj.states.push_back(std::move(s));
  }
  return traj;
}

double revival_time(const TwoModeHamiltonian& h) {
  const double chi = std::abs(h.u_aa - h.u_ab);
  if (chi == 0) return std::numeric_limits<double>::infinity();
  return M_PI * h.hbar / chi;
}

double collapse_rate(const OracleTrajectory& traj) {
  if (traj.times.size() < 4)
    throw std::invalid_argument("trajectory too short for a collapse fit");
  const double v0 = traj.visibility.front();
  if (!(v0 > 0)) throw std::invalid_argument("vanishing initial visibility");
  // weighted fit of -ln(v/v0) = (t/t_c)^2 over the early-time window
  // where the visibility has dropped by at most half
  double num = 0, den = 0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double ratio = traj.visibility[i] / v0;
    if (ratio < 0.5) break;
    if (ratio >= 1.0) continue;
    const double t2 = traj.times[i] * traj.times[i];
    num += t2 * (-std::log(ratio));
    den += t2 * t2;
  }
  if (den == 0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace josim
