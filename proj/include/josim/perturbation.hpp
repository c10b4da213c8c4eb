#pragma once

#include <vector>

#include "josim/grid.hpp"
#include "josim/hydro.hpp"
#include "josim/moments.hpp"
#include "josim/params.hpp"

namespace josim {

// v = dV(r0) / (hbar lambda) = m dw^2 r0^2 / (2 hbar lambda):
// trap-asymmetry energy at the condensate edge over the tunnelling energy.
double perturbation_parameter(const PhysicalParams& params, double r0);

// First-order Fourier corrections at a single radius, from the local 8x8
// algebraic system of the hydrodynamic limit.  a/b are the e^{+/-2i lambda t}
// components of the psi corrections, c/d those of the phi corrections.
struct NodeCorrections {
  Complex a_plus{0, 0}, b_plus{0, 0}, a_minus{0, 0}, b_minus{0, 0};
  Complex c_plus{0, 0}, d_plus{0, 0}, c_minus{0, 0}, d_minus{0, 0};
  bool valid = true;
};

// Solve the coupled 8x8 systems (psi corrections, then phi corrections with
// the psi-dependent source terms) at radius r, using the analytic
// Thomas-Fermi zero order carried by the solution.  Marked invalid when the
// local matrix is close to singular (tunnelling resonance).
NodeCorrections solve_corrections_at(double r, const ZeroOrderSolution& zo,
                                     const PhysicalParams& params);

// Grid-sampled corrections, with the singular-node bookkeeping required by
// the hydrodynamic reduction.
struct CorrectionFunctions {
  RadialField a_plus, a_minus, b_plus, b_minus;  // psi corrections
  RadialField c_plus, c_minus, d_plus, d_minus;  // phi corrections
  std::vector<unsigned char> valid;
  double excluded_volume_fraction = 0;  // of the TF ball
};

CorrectionFunctions solve_first_order_psi(const ZeroOrderSolution& zo,
                                          const PhysicalParams& params);

// Adds the phi corrections (sources T1/T2 built from the psi corrections).
CorrectionFunctions solve_first_order_phi(const ZeroOrderSolution& zo,
                                          const CorrectionFunctions& psi_corr,
                                          const PhysicalParams& params);

// Boundary-regularized overlap int dV x^* y d^3 r truncated at r0 - xi,
// with the value at r0 - 2 xi reported for log-sensitivity control.
struct RegularizedOverlap {
  Complex value{0, 0};
  Complex value_2xi{0, 0};
  double r_cut = 0;
};

RegularizedOverlap regularized_phi_phi(const RadialField& x,
                                       const RadialField& y,
                                       const PhysicalParams& params, double xi,
                                       double r0);

// Time-constant parts of the first-order phi overlaps, by adaptive radial
// quadrature of the per-radius corrections with cutoff r0(1 - eps):
//   (phi_+^(1)|phi_-^(0)) -> int dV D_+^* phi_-^(0)
//   (phi_+^(0)|phi_-^(1)) -> int dV phi_+^(0)* C_-
Complex phi1_phi0_constant(const ZeroOrderSolution& zo,
                           const PhysicalParams& params, double eps);
Complex phi0_phi1_constant(const ZeroOrderSolution& zo,
                           const PhysicalParams& params, double eps);

// Closed-form first-order oscillation amplitude of Q_rel per unit P_rel:
// (6/5) v |ln(2 xi / r0)| N/sqrt(N+ N-) * hbar.
double q1_amplitude(const ZeroOrderSolution& zo, const PhysicalParams& params);

struct PerturbationCoefficients {
  double v = 0;
  double log_factor = 0;        // ln(2 xi / r0), negative in the TF regime
  double q1_amplitude = 0;      // action per unit P_rel
  double q2_rate = 0;           // N^2/(N+ N-) variant (positive rate)
  double q2_rate_alt = 0;       // N*dN/(N+ N-) variant
  double tau_d = 0;             // 1/q2_rate, infinity sentinel when rate = 0
  double tau_d_alt = 0;
};

// Both printed dephasing-rate variants; rates reported as positive numbers.
PerturbationCoefficients dephasing_rate(const PhysicalParams& params,
                                        const ZeroOrderSolution& zo,
                                        double p2_rel0);

struct SecularFitReport {
  double slope = 0;             // fitted d<Q_rel>/dt per unit <P_rel(0)>
  double q2_rate = 0;           // closed-form reference
  double relative_error = 0;    // |slope - q2_rate| / q2_rate
  double oscillation_amplitude = 0;
  double residual_fraction = 0; // rms residual over |slope| * t_final
};

// Propagates the moment system with the perturbatively corrected phi-phi
// coefficient (oscillating zero-order part plus the constant first-order
// parts), then least-squares fits <Q_rel>(t)/<P_rel(0)> against
// {1, t, sin(2 lambda t + dtheta0), cos(2 lambda t + dtheta0)}.
SecularFitReport secular_growth_check(const ZeroOrderSolution& zo,
                                      const PhysicalParams& params,
                                      double eps, double t_final,
                                      int n_samples = 2000);

}  // namespace josim
