#pragma once

#include <vector>

#include "josim/params.hpp"

namespace josim {

// Classical two-mode state: population difference and relative phase.
struct TwoModeState {
  double delta_n = 0;    // N_A - N_B
  double delta_phi = 0;  // Phi_A - Phi_B, stored unwrapped
};

struct TwoModeTrajectory {
  std::vector<double> times;
  std::vector<TwoModeState> states;
  std::vector<double> c_values;
};

// C = 2*hbar*lambda*sqrt(N^2 - dN^2)*cos(dPhi); conserved along the flow.
double hamiltonian_c(const TwoModeState& state, const PhysicalParams& params);

// Hamilton equations dN' = -(1/hbar) dC/d(dPhi), dPhi' = (1/hbar) dC/d(dN).
TwoModeState two_mode_derivative(const TwoModeState& state,
                                 const PhysicalParams& params);

// Fixed-step RK4; internal step chosen so that at least steps_per_period
// steps (default 800, floor 200) cover one Josephson period pi/lambda.
TwoModeTrajectory evolve_two_mode(const TwoModeState& state0,
                                  const PhysicalParams& params,
                                  const std::vector<double>& times,
                                  int steps_per_period = 800);

// A = sqrt(N^2 - C^2/(2*hbar*lambda)^2); throws if lambda == 0.
double amplitude_A(const TwoModeState& state0, const PhysicalParams& params);

// dN(t) = A*cos(2*lambda*t + Phi_N0) with the arccos branch fixed by the
// sign of dN'(0).
double closed_form_delta_n(const TwoModeState& state0,
                           const PhysicalParams& params, double t);

// Closed-form relative phase, branch-unwrapped and continuous in t.
// Requires C != 0; throws otherwise (use the integrator there).
double closed_form_phase(const TwoModeState& state0,
                         const PhysicalParams& params, double t);

}  // namespace josim
