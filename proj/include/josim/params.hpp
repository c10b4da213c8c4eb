#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace josim {

// Raw experimental inputs, in SI units.
struct RawParams {
  double n_total = 0;            // atom number N
  double mass = 0;               // kg
  double omega_a = 0;            // rad/s, trap A
  double omega_b = 0;            // rad/s, trap B
  double scattering_length = 0;  // m
  double lambda_coupling = 0;    // rad/s, Josephson coupling
};

// Parameters in internal trap units: hbar = m = omega_m = 1, where
// omega_m = sqrt((omega_a^2 + omega_b^2)/2). Lengths are in units of the
// mean-trap oscillator length, energies in units of hbar*omega_m.
struct PhysicalParams {
  double n_total = 0;
  double mass = 1.0;
  double omega_a = 1.0;
  double omega_b = 1.0;
  double scattering_length = 0;  // in oscillator-length units
  double lambda_coupling = 0;
  double hbar = 1.0;

  double u0 = 0;              // 4*pi*hbar^2*a_sc/m
  double omega_mean_sq = 1;   // (omega_a^2 + omega_b^2)/2
  double delta_omega_sq = 0;  // (omega_a^2 - omega_b^2)/2

  // SI conversion factors kept for round-tripping.
  double length_unit_si = 1;  // m per internal length
  double time_unit_si = 1;    // s per internal time
  double mass_si = 1;         // kg

  // V_m(r) = (V_A + V_B)/2
  double mean_potential(double r) const {
    return 0.5 * mass * omega_mean_sq * r * r;
  }
  // delta V(r) = (V_A - V_B)/2
  double delta_potential(double r) const {
    return 0.5 * mass * delta_omega_sq * r * r;
  }
  double potential_a(double r) const {
    return 0.5 * mass * omega_a * omega_a * r * r;
  }
  double potential_b(double r) const {
    return 0.5 * mass * omega_b * omega_b * r * r;
  }

  RawParams to_raw() const;
};

// Validates raw inputs and converts to internal trap units.
PhysicalParams make_params(const RawParams& raw);

// Builds params directly in internal units (hbar = m = 1); frequencies and
// the scattering length are taken as given. Used for desk-scale studies.
PhysicalParams make_params_internal(double n_total, double omega_a,
                                    double omega_b, double scattering_length,
                                    double lambda_coupling);

}  // namespace josim
