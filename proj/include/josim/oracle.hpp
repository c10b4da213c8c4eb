#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "josim/params.hpp"

namespace josim {

// State of N atoms on two modes in the Fock basis |n_A = k, n_B = N - k>,
// k = 0..N.
struct FockVector {
  Eigen::VectorXcd amplitudes;
  int n_atoms() const { return static_cast<int>(amplitudes.size()) - 1; }
};

// Two-site reduction: H = -hbar lambda (a^dag b + b^dag a)
//   + (u_aa/2) n_A(n_A-1) + (u_aa/2) n_B(n_B-1) + u_ab n_A n_B
//   + delta_e (n_A - n_B)/2.
// With u_aa == u_ab the interaction is a c-number on the N-atom sector.
struct TwoModeHamiltonian {
  int n_atoms = 0;
  double hbar = 1.0;
  double lambda_coupling = 0;
  double u_aa = 0;
  double u_ab = 0;
  double delta_e = 0;
  Eigen::VectorXd diagonal;      // size N+1
  Eigen::VectorXd off_diagonal;  // size N
};

TwoModeHamiltonian build_hamiltonian(int n_atoms, double hbar,
                                     double lambda_coupling, double u_aa,
                                     double u_ab, double delta_e);

// Atomic coherent state: every atom in cos(theta/2)|A> + e^{i phi}
// sin(theta/2)|B>; theta = pi/2, phi = 0 puts all atoms in the symmetric
// mode.
FockVector coherent_state(int n_atoms, double theta, double phi);

FockVector fock_state(int n_atoms, int k);

struct OracleTrajectory {
  std::vector<double> times;
  std::vector<FockVector> states;
  std::vector<double> delta_n;      // <n_A - n_B>
  std::vector<double> var_delta_n;  // Var(n_A - n_B)
  std::vector<double> visibility;   // |<a^dag b>| / (N/2)
  std::vector<double> energy;
};

// Exact propagation by dense eigendecomposition of the tridiagonal matrix.
OracleTrajectory evolve_exact(const FockVector& state0,
                              const TwoModeHamiltonian& h,
                              const std::vector<double>& times);

double visibility(const FockVector& state);
double expect_delta_n(const FockVector& state);
double var_delta_n(const FockVector& state);
double expect_energy(const FockVector& state, const TwoModeHamiltonian& h);

// Exact revival time of the Kerr-type spectrum at lambda = 0:
// pi hbar / |u_aa - u_ab| (infinite when the interactions are equal).
double revival_time(const TwoModeHamiltonian& h);

// Gaussian collapse rate 1/t_c from an early-time fit of
// ln(visibility(t)/visibility(0)) = -(t/t_c)^2.
double collapse_rate(const OracleTrajectory& traj);

}  // namespace josim
