#pragma once

#include <memory>
#include <vector>

#include "josim/grid.hpp"
#include "josim/params.hpp"

namespace josim {

enum class Basis { kAB, kPlusMinus };

// Pair of radial condensate wavefunctions, normalized so that
// sum_i w_i |psi|^2 equals the atom number carried by the component.
// In the +/- basis the fields live in the rotating frame of the
// e^{-/+ i lambda t} transformation.
struct CoupledField {
  GridPtr grid;
  std::vector<Complex> first;   // psi_A or psi_+
  std::vector<Complex> second;  // psi_B or psi_-
  Basis basis = Basis::kAB;
  double time = 0;
};

struct SolverConfig {
  double dt = 1e-3;
  // imaginary-time ground-state controls
  double imag_dt = 1e-3;
  int imag_max_steps = 200000;
  double imag_tol = 1e-12;  // relative chemical-potential drift per step
};

struct GpeObservables {
  double n_first = 0;
  double n_second = 0;
  double delta_n = 0;
  double delta_phi = 0;      // Phi_first - Phi_second from the overlap
  Complex cross_corr{0, 0};  // int psi_first^* psi_second d^3r
  double energy = 0;
};

// Spherically symmetric split-step solver on u = r * psi, with a sine
// transform for the exact kinetic sub-step and analytic 2x2 rotations for
// the linear couplings.  The grid must be uniform including r = 0 and r_max.
class GpeSolver {
 public:
  GpeSolver(GridPtr grid, const PhysicalParams& params, SolverConfig config);
  ~GpeSolver();
  GpeSolver(const GpeSolver&) = delete;
  GpeSolver& operator=(const GpeSolver&) = delete;

  const PhysicalParams& params() const { return params_; }
  const SolverConfig& config() const { return config_; }

  // One Strang step of (hbar = 1)
  //   i dpsi_A/dt = [T + V_A + u0 (rho_A + rho_B)] psi_A - lambda psi_B
  // and the same with A <-> B.  The tunnelling term is applied as an exact
  // spatially uniform 2x2 rotation.
  void step_ab(CoupledField& field) const;

  // One Strang step of the same dynamics in the rotating +/- frame:
  //   i dpsi_+/dt = [T + V_m + u0 rho] psi_+ + dV e^{-2 i lambda t} psi_-
  // with the conjugate coupling for psi_-, the oscillating factor taken at
  // mid-step, and the coupling applied as an exact per-node 2x2 unitary.
  void step_pm(CoupledField& field) const;

  // Ground state of a single condensate of n_atoms in the mean trap,
  // by normalized imaginary-time propagation.  Returns real-positive psi.
  std::vector<Complex> ground_state(double n_atoms) const;

  double chemical_potential(const std::vector<Complex>& psi) const;
  double kinetic_energy(const std::vector<Complex>& psi) const;
  // Mean-field energy; +/- states are mapped back to the A/B frame first.
  double total_energy(const CoupledField& field) const;

 private:
  struct Impl;
  GridPtr grid_;
  PhysicalParams params_;
  SolverConfig config_;
  std::unique_ptr<Impl> impl_;
};

// Unitary basis change at the state's current time:
// psi_+/- = e^{-/+ i lambda t} (psi_A +/- psi_B)/sqrt(2), and its inverse.
CoupledField transform_basis(const CoupledField& field,
                             const PhysicalParams& params);

GpeObservables measure(const CoupledField& field, const GpeSolver& solver);

// Split initial condition for the Josephson runs: both components share the
// N-atom ground-state profile, with populations set by delta_n and relative
// phase delta_phi (A leads B by delta_phi).
CoupledField make_josephson_initial(const GpeSolver& solver, GridPtr grid,
                                    double n_total, double delta_n,
                                    double delta_phi);

}  // namespace josim
