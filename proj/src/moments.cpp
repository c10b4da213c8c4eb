#include "josim/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace josim {

Complex overlap(const RadialField& bra, const RadialField& ket,
                const PhysicalParams& params, double t) {
  check_same_grid(bra, ket);
  const auto& grid = *bra.grid;
  Complex acc(0, 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    acc += grid.weight(i) * params.delta_potential(grid.node(i)) *
           std::conj(bra.values[i]) * ket.values[i];
  }
  return acc * std::polar(1.0, -2.0 * params.lambda_coupling * t);
}

OverlapIntegrals compute_overlaps(const RadialField& psi_plus,
                                  const RadialField& psi_minus,
                                  const RadialField& phi_plus,
                                  const RadialField& phi_minus,
                                  double gamma_plus, double gamma_minus,
                                  double u_tilde, const PhysicalParams& params,
                                  double t) {
  check_same_grid(psi_plus, psi_minus);
  check_same_grid(psi_plus, phi_plus);
  check_same_grid(psi_plus, phi_minus);
  const auto& grid = *psi_plus.grid;

  OverlapIntegrals ov;
  ov.gamma_plus = gamma_plus;
  ov.gamma_minus = gamma_minus;
  ov.u_tilde = u_tilde;
  ov.phi_psi = overlap(phi_plus, psi_minus, params, t);
  ov.psi_phi = overlap(psi_plus, phi_minus, params, t);
  ov.psi_psi = overlap(psi_plus, psi_minus, params, t);
  ov.phi_phi = overlap(phi_plus, phi_minus, params, t);
  double mode = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    mode += grid.weight(i) *
            (psi_minus.values[i] * std::conj(phi_minus.values[i])).real() *
            (psi_plus.values[i] * std::conj(phi_plus.values[i])).real();
  }
  ov.i_integral = mode;
  return ov;
}

OverlapIntegrals analytic_overlaps(const ZeroOrderSolution& sol,
                                   const PhysicalParams& params, double t,
                                   double eps_cut) {
  if (!(eps_cut > 0 && eps_cut < 1))
    throw std::invalid_argument("eps_cut must lie in (0,1)");
  const auto& tf = sol.tf;
  const double lam = params.lambda_coupling;
  const double hbar = params.hbar;
  const double v = params.delta_potential(tf.r0) / (hbar * lam);
  const Complex rot = std::polar(1.0, -(2.0 * lam * t + sol.delta_theta0));
  const double np = sol.n_plus, nm = sol.n_minus;
  const double n_tot = np + nm;

  OverlapIntegrals ov;
  ov.gamma_plus = sol.gamma_plus;
  ov.gamma_minus = sol.gamma_minus;
  ov.u_tilde = sol.u_tilde;
  // I = alpha^2 * volume of the TF ball; the integrand is the constant
  // alpha^2, so no boundary regularization is needed, and the full-ball
  // value keeps the exact cancellation against N u_tilde in the drift.
  ov.i_integral =
      tf.alpha * tf.alpha * 4.0 * M_PI / 3.0 * std::pow(tf.r0, 3);

  // (psi_+|psi_-) = (3/7) hbar lambda v sqrt(N+ N-)/N e^{-i theta}.  All
  // overlaps here are stated for unit-normalized modes; with the
  // atom-count-carrying fields psi_psi gains a factor N and phi_phi loses
  // one, which would inflate the relative-sector coupling product by N^2
  // and destroy the slow secular dynamics.
  ov.psi_psi =
      (3.0 / 7.0) * hbar * lam * v * std::sqrt(np * nm) / n_tot * rot;

  // (phi_+|psi_-) = (3/10) hbar lambda v sqrt(N-/N+) e^{-i theta}; the
  // |psi| dependence cancels against phi = alpha/psi^* on the TF ball.
  const double c_phi_psi = 0.3 * hbar * lam * v;
  ov.phi_psi = c_phi_psi * std::sqrt(nm / np) * rot;
  ov.psi_phi = c_phi_psi * std::sqrt(np / nm) * rot;

  // (phi_+|phi_-) diverges at the boundary like the integral of
  // x^4/(1-x^2); cut at eps it equals (1/2) ln(2/eps) - 4/3 + O(eps).
  const double log_part = 0.5 * std::log(2.0 / eps_cut) - 4.0 / 3.0;
  ov.phi_phi =
      0.3 * hbar * lam * v * (n_tot / std::sqrt(np * nm)) * log_part * rot;
  return ov;
}

Eigen::Matrix4d assemble_generator(const OverlapIntegrals& ov,
                                   const PhysicalParams& params,
                                   DriftGrouping grouping) {
  if (!(ov.gamma_plus > 0) || !(ov.gamma_minus > 0))
    throw std::invalid_argument("gamma factors must be positive");
  const double hbar = params.hbar;
  const double n_u_tilde = params.n_total * ov.u_tilde;
  Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
  f(1, 0) = n_u_tilde;

  // With dV identically zero the relative sector is frozen: the interaction
  // and mode-overlap terms cancel identically in the hydrodynamic limit, so
  // build the exact zero instead of the difference of two large numbers.
  if (params.delta_omega_sq == 0.0) return f;

  const double gg = ov.gamma_plus * ov.gamma_minus;
  const double a = (ov.phi_psi.imag() / ov.gamma_plus -
                    ov.psi_phi.imag() / ov.gamma_minus) /
                   hbar;
  f(2, 2) = a;
  f(2, 3) = ov.psi_psi.real() / (hbar * hbar);

  const double interaction = 2.0 * params.n_total * params.u0 * ov.i_integral;
  double bracket;
  if (grouping == DriftGrouping::kNested) {
    bracket = n_u_tilde - interaction / gg - ov.phi_phi.real() / gg;
  } else {
    bracket = n_u_tilde - interaction - ov.phi_phi.real();
  }
  f(3, 2) = bracket / gg;
  f(3, 3) = -a;
  return f;
}

MomentTrajectory propagate_moments(
    const MomentState& initial,
    const std::function<Eigen::Matrix4d(double)>& generator,
    const std::vector<double>& times, int n_substeps) {
  if (times.empty()) throw std::invalid_argument("times must be non-empty");
  if (n_substeps < 1) throw std::invalid_argument("n_substeps must be >= 1");
  if ((initial.cov - initial.cov.transpose()).norm() >
      1e-12 * (1.0 + initial.cov.norm()))
    throw std::invalid_argument("initial covariance must be symmetric");
  const Eigen::Vector4d eig =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(initial.cov)
          .eigenvalues();
  if (eig.minCoeff() < -1e-10 * std::max(1.0, initial.cov.trace()))
    throw std::invalid_argument("initial covariance must be PSD");

  MomentTrajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  MomentState y = initial;
  traj.states.push_back(y);

  auto deriv = [&](const MomentState& s, double t) {
    const Eigen::Matrix4d f = generator(t);
    MomentState d;
    d.mean = f * s.mean;
    d.cov = f * s.cov + s.cov * f.transpose();
    return d;
  };
  auto axpy = [](const MomentState& s, double c, const MomentState& d) {
    MomentState out;
    out.mean = s.mean + c * d.mean;
    out.cov = s.cov + c * d.cov;
    return out;
  };

  double t = times.front();
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double span = times[i] - t;
    if (span <= 0) throw std::invalid_argument("times must increase");
    const double h = span / n_substeps;
    for (int k = 0; k < n_substeps; ++k) {
      const double tk = t + k * h;
      const MomentState k1 = deriv(y, tk);
      const MomentState k2 = deriv(axpy(y, 0.5 * h, k1), tk + 0.5 * h);
      const MomentState k3 = deriv(axpy(y, 0.5 * h, k2), tk + 0.5 * h);
      const MomentState k4 = deriv(axpy(y, h, k3), tk + h);
      y.mean += h / 6.0 * (k1.mean + 2 * k2.mean + 2 * k3.mean + k4.mean);
      y.cov += h / 6.0 * (k1.cov + 2 * k2.cov + 2 * k3.cov + k4.cov);
    }
    t = times[i];
    traj.states.push_back(y);
  }
  return traj;
}

Eigen::Matrix4d average_generator(
    const std::function<Eigen::Matrix4d(double)>& generator, double t0,
    double period, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
  // midpoint rule; the integrand is smooth and periodic
  const double h = period / n_samples;
  for (int k = 0; k < n_samples; ++k) acc += generator(t0 + (k + 0.5) * h);
  return acc / n_samples;
}

double correlation_decay(const MomentState& state, double hbar) {
  const double q2 = state.cov(3, 3) + state.mean(3) * state.mean(3);
  return std::exp(-q2 / (hbar * hbar));
}

}  // namespace josim
