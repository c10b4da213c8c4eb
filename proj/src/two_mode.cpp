#include "josim/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace josim {

namespace {

double clamp_dn(double dn, double n_total) {
  const double lim = n_total * (1.0 - 1e-12);
  return std::clamp(dn, -lim, lim);
}

}  // namespace

double hamiltonian_c(const TwoModeState& state, const PhysicalParams& params) {
  const double n = params.n_total;
  const double dn = clamp_dn(state.delta_n, n);
  return 2.0 * params.hbar * params.lambda_coupling *
         std::sqrt(n * n - dn * dn) * std::cos(state.delta_phi);
}

TwoModeState two_mode_derivative(const TwoModeState& state,
                                 const PhysicalParams& params) {
  const double n = params.n_total;
  const double dn = clamp_dn(state.delta_n, n);
  const double root = std::sqrt(n * n - dn * dn);
  const double pre = 2.0 * params.lambda_coupling;  // hbar cancels in dN'
  TwoModeState d;
  // Signs follow the microscopic H = -hbar lambda (a^dag b + b^dag a) with
  // dPhi = Phi_A - Phi_B, matching the mean-field and exact evolutions.
  d.delta_n = pre * root * std::sin(state.delta_phi);
  d.delta_phi = -pre * (dn / root) * std::cos(state.delta_phi);
  return d;
}

TwoModeTrajectory evolve_two_mode(const TwoModeState& state0,
                                  const PhysicalParams& params,
                                  const std::vector<double>& times,
                                  int steps_per_period) {
  if (times.empty()) throw std::invalid_argument("times must be non-empty");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("times must be strictly increasing");
  }
  steps_per_period = std::max(steps_per_period, 200);
  const double lambda = std::abs(params.lambda_coupling);
  // Step so that one period pi/lambda is covered by steps_per_period steps.
  const double h_max = lambda > 0
                           ? M_PI / lambda / static_cast<double>(steps_per_period)
                           : std::numeric_limits<double>::infinity();

  TwoModeTrajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  traj.c_values.reserve(times.size());

  TwoModeState y = state0;
  y.delta_n = clamp_dn(y.delta_n, params.n_total);
  double t = times.front();
  traj.states.push_back(y);
  traj.c_values.push_back(hamiltonian_c(y, params));

  auto rk4_step = [&params](const TwoModeState& s, double h) {
    const TwoModeState k1 = two_mode_derivative(s, params);
    TwoModeState s2{s.delta_n + 0.5 * h * k1.delta_n,
                    s.delta_phi + 0.5 * h * k1.delta_phi};
    const TwoModeState k2 = two_mode_derivative(s2, params);
    TwoModeState s3{s.delta_n + 0.5 * h * k2.delta_n,
                    s.delta_phi + 0.5 * h * k2.delta_phi};
    const TwoModeState k3 = two_mode_derivative(s3, params);
    TwoModeState s4{s.delta_n + h * k3.delta_n, s.delta_phi + h * k3.delta_phi};
    const TwoModeState k4 = two_mode_derivative(s4, params);
    TwoModeState out;
    out.delta_n = s.delta_n + h / 6.0 *
                                  (k1.delta_n + 2 * k2.delta_n +
                                   2 * k3.delta_n + k4.delta_n);
    out.delta_phi = s.delta_phi + h / 6.0 *
                                      (k1.delta_phi + 2 * k2.delta_phi +
                                       2 * k3.delta_phi + k4.delta_phi);
    out.delta_n = clamp_dn(out.delta_n, params.n_total);
    return out;
  };

  for (std::size_t i = 1; i < times.size(); ++i) {
    const double span = times[i] - t;
    const int n_sub =
        std::isfinite(h_max)
            ? std::max(1, static_cast<int>(std::ceil(span / h_max)))
            : 1;
    const double h = span / n_sub;
    for (int k = 0; k < n_sub; ++k) y = rk4_step(y, h);
    t = times[i];
    traj.states.push_back(y);
    traj.c_values.push_back(hamiltonian_c(y, params));
  }
  return traj;
}

double amplitude_A(const TwoModeState& state0, const PhysicalParams& params) {
  if (params.lambda_coupling == 0.0)
    throw std::invalid_argument("amplitude_A requires lambda != 0");
  const double c = hamiltonian_c(state0, params);
  const double denom = 2.0 * params.hbar * params.lambda_coupling;
  const double n = params.n_total;
  const double arg = n * n - (c / denom) * (c / denom);
  return std::sqrt(std::max(arg, 0.0));
}

namespace {

// Phase offset Phi_N0 in dN(t) = A cos(2 lambda t + Phi_N0), with the
// branch of arccos(dN0/A) fixed by the sign of dN'(0).
double phase_offset(const TwoModeState& state0, const PhysicalParams& params,
                    double amp) {
  if (amp == 0.0) return 0.0;
  const TwoModeState d0 = two_mode_derivative(state0, params);
  // cos = dN0/A, sin = -dN'(0)/(2 lambda A)
  const double c = state0.delta_n / amp;
  const double s = -d0.delta_n / (2.0 * params.lambda_coupling * amp);
  return std::atan2(s, c);
}

}  // namespace

double closed_form_delta_n(const TwoModeState& state0,
                           const PhysicalParams& params, double t) {
  const double amp = amplitude_A(state0, params);
  if (amp == 0.0) return state0.delta_n;
  const double phi0 = phase_offset(state0, params, amp);
  return amp * std::cos(2.0 * params.lambda_coupling * t + phi0);
}

double closed_form_phase(const TwoModeState& state0,
                         const PhysicalParams& params, double t) {
  const double c = hamiltonian_c(state0, params);
  const double c_scale =
      2.0 * params.hbar * params.lambda_coupling * params.n_total;
  if (std::abs(c) < 1e-14 * c_scale)
    throw std::invalid_argument("closed_form_phase requires C != 0");
  const double amp = amplitude_A(state0, params);
  const double phi0 = phase_offset(state0, params, amp);
  const double pre = -2.0 * params.hbar * params.lambda_coupling * amp / c;
  // tan(dPhi - base) = -(2 hbar lambda A / C) sin(2 lambda t + Phi_N0);
  // |dPhi - base| < pi/2 along the whole orbit, so atan is the right branch.
  const double base =
      state0.delta_phi - std::atan(pre * std::sin(phi0));
  return base +
         std::atan(pre * std::sin(2.0 * params.lambda_coupling * t + phi0));
}

}  // namespace josim
