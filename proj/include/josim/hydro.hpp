#pragma once

#include <functional>
#include <vector>

#include "josim/grid.hpp"
#include "josim/params.hpp"

namespace josim {

// Analytic Thomas-Fermi zero order for a single condensate of N atoms in the
// mean trap V_m(r) = m*omega_mean_sq*r^2/2, in the trap unit system.
struct TfZeroOrder {
  double n_atoms = 0;
  double omega_sq = 0;     // mean trap curvature omega_m^2 (=1 in trap units)
  double u0 = 0;           // interaction constant 4*pi*hbar^2*a/m
  double r0 = 0;           // equilibrium TF radius
  double mu = 0;           // chemical potential m*omega^2*r0^2/2
  double alpha = 0;        // 3/(8*pi*r0^3), amplitude of the phase mode
  double xi = 0;           // boundary healing length (2 m^2 omega^2 r0)^{-1/3}

  // TF density rho(r) = 15N/(8 pi r0^3) (1 - r^2/r0^2), clipped at 0.
  double density(double r) const;
  // Zero-order phase mode phi0 = alpha / conj(psi0) = alpha / sqrt(rho).
  double phase_mode(double r) const;
};

TfZeroOrder make_tf_zero_order(double n_atoms, double omega_sq, double u0);

// rho(r) = 15N/(8 pi r0^3)(1 - r^2/r0^2) for r < r0, else 0.
double tf_density(double r, double r0, double n_total);

// Scaling dynamics of the TF radius: m r0'' = -m omega^2 r0 + K/r0^4 with
// K = 15 N u0 / (4 pi).  Linearization about r0* oscillates at sqrt(5) omega.
struct BreathingTrajectory {
  std::vector<double> times;
  std::vector<double> radius;
  std::vector<double> radius_dot;
};

double equilibrium_radius(double n_atoms, double omega_sq, double u0);

BreathingTrajectory evolve_breathing(double r_init, double rdot_init,
                                     double n_atoms, double omega_sq,
                                     double u0,
                                     const std::vector<double>& times,
                                     int steps_per_period = 800);

// Same ODE with a time-dependent trap curvature omega_sq_of_t(t).
BreathingTrajectory evolve_r0(double r_init, double rdot_init, double n_atoms,
                              const std::function<double(double)>& omega_sq_of_t,
                              double u0, const std::vector<double>& times,
                              int steps_per_period = 800);

// Scaling-solution phase bookkeeping along a radius trajectory:
//   A(t) = -m r0'(t) / (2 r0(t))   (quadratic phase coefficient)
//   B±'(t) = 15 N u0 / (8 pi r0(t)^3), accumulated from B±(0).
// B+ - B- is conserved, so delta_theta0 = (B+(0) - B-(0))/hbar is constant.
struct HydroPhases {
  std::vector<double> times;
  std::vector<double> a_coeff;
  std::vector<double> b_plus;
  std::vector<double> b_minus;
};

HydroPhases phase_coefficients(const BreathingTrajectory& traj,
                               double n_atoms, double u0, double b_plus0,
                               double b_minus0);

// Zero-order condensate pair sampled on a grid; the +/- combinations carry
// N_plus = N, N_minus = dN/... see make_zero_order_solution.
struct ZeroOrderSolution {
  GridPtr grid;
  TfZeroOrder tf;
  double n_plus = 0;        // norm of the symmetric combination
  double n_minus = 0;       // norm of the antisymmetric combination
  double delta_theta0 = 0;  // initial relative phase of the two combinations
  std::vector<double> psi_plus;   // real radial profiles sqrt(N_pm rho/N)
  std::vector<double> psi_minus;
  std::vector<double> phi_plus;   // truncated phase modes (zero past r0 - xi)
  std::vector<double> phi_minus;
  double gamma_plus = 0;    // overlap (phi_pm | psi_pm), exactly 1/2 in TF
  double gamma_minus = 0;
  double u_tilde = 0;       // 4 u0 alpha = 2 dmu/dN
  double r_cut = 0;         // truncation radius actually used, r0 - xi
};

ZeroOrderSolution make_zero_order_solution(const PhysicalParams& params,
                                           GridPtr grid, double n_plus,
                                           double n_minus,
                                           double delta_theta0);

double healing_length(const TfZeroOrder& tf);

// u_tilde = 2 dmu/dN evaluated by numeric differentiation of mu(N) for a
// general (non-TF) equation of state supplied as mu_of_n.
double compute_u_tilde_general(const std::function<double(double)>& mu_of_n,
                               double n_atoms, double rel_step = 1e-5);

}  // namespace josim
