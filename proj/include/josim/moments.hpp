#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "josim/grid.hpp"
#include "josim/hydro.hpp"
#include "josim/params.hpp"

namespace josim {

// Trap-asymmetry weighted overlaps (x|y) = int dV~ x^* y d^3r with
// dV~ = dV(r) e^{-2 i lambda t}, between the condensate modes and their
// phase partners, evaluated at one instant.
struct OverlapIntegrals {
  Complex phi_psi{0, 0};  // (phi_+ | psi_-)
  Complex psi_phi{0, 0};  // (psi_+ | phi_-)
  Complex psi_psi{0, 0};  // (psi_+ | psi_-)
  Complex phi_phi{0, 0};  // (phi_+ | phi_-), boundary-regularized
  double gamma_plus = 0.5;
  double gamma_minus = 0.5;
  double i_integral = 0;  // int Re(psi_- phi_-^*) Re(psi_+ phi_+^*) d^3r
  double u_tilde = 0;     // phase-accumulation coefficient (2 dmu/dN in TF)
};

// (bra|ket) with the explicit e^{-2 i lambda t} factor of the rotating-frame
// coupling.
Complex overlap(const RadialField& bra, const RadialField& ket,
                const PhysicalParams& params, double t);

// Grid evaluation from sampled fields.  phi fields are expected to be
// truncated near the condensate boundary already.
OverlapIntegrals compute_overlaps(const RadialField& psi_plus,
                                  const RadialField& psi_minus,
                                  const RadialField& phi_plus,
                                  const RadialField& phi_minus,
                                  double gamma_plus, double gamma_minus,
                                  double u_tilde, const PhysicalParams& params,
                                  double t);

// Closed-form Thomas-Fermi overlaps at time t, with relative mode phase
// theta(t) = 2 lambda t + delta_theta0 and boundary cutoff eps = cut/r0.
OverlapIntegrals analytic_overlaps(const ZeroOrderSolution& sol,
                                   const PhysicalParams& params, double t,
                                   double eps_cut);

// How the 1/(gamma_+ gamma_-) factors multiply the drift coefficient of the
// relative-phase equation.  kNested repeats the inner factor on the
// mode-overlap and phi-phi terms (as printed); kFlat applies the outer
// factor once to the whole bracket.
enum class DriftGrouping { kNested, kFlat };

// Generator F of the first-moment flow dm/dt = F m for
// m = (P_tot, Q_tot, P_rel, Q_rel); the tot/rel cross blocks are zero.
Eigen::Matrix4d assemble_generator(
    const OverlapIntegrals& ov, const PhysicalParams& params,
    DriftGrouping grouping = DriftGrouping::kNested);

struct MomentState {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
};

struct MomentTrajectory {
  std::vector<double> times;
  std::vector<MomentState> states;
};

// RK4 on dm/dt = F(t) m and dSigma/dt = F Sigma + Sigma F^T.
// Requires a symmetric positive-semidefinite initial covariance.
MomentTrajectory propagate_moments(
    const MomentState& initial,
    const std::function<Eigen::Matrix4d(double)>& generator,
    const std::vector<double>& times, int n_substeps = 64);

// Time average of the generator over [t0, t0 + period].
Eigen::Matrix4d average_generator(
    const std::function<Eigen::Matrix4d(double)>& generator, double t0,
    double period, int n_samples = 512);

// |<Psi_+^dag Psi_->| suppression from Gaussian relative-phase fluctuations:
// exp(-<Q_rel^2>/hbar^2) with <Q_rel^2> = Var + mean^2.
double correlation_decay(const MomentState& state, double hbar = 1.0);

}  // namespace josim
