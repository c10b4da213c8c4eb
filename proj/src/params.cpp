#include "josim/params.hpp"

namespace josim {

namespace {

constexpr double kHbarSi = 1.054571817e-34;  // J s

void require_positive(double value, const char* field) {
  if (!(value > 0)) {
    throw std::invalid_argument(std::string("params: ") + field +
                                " must be > 0");
  }
}

}  // namespace

PhysicalParams make_params(const RawParams& raw) {
  require_positive(raw.n_total, "n_total");
  require_positive(raw.mass, "mass");
  require_positive(raw.omega_a, "omega_a");
  require_positive(raw.omega_b, "omega_b");
  if (raw.scattering_length < 0) {
    throw std::invalid_argument("params: scattering_length must be >= 0");
  }
  if (raw.lambda_coupling < 0) {
    throw std::invalid_argument("params: lambda_coupling must be >= 0");
  }

  const double omega_m =
      std::sqrt(0.5 * (raw.omega_a * raw.omega_a + raw.omega_b * raw.omega_b));
  const double a_ho = std::sqrt(kHbarSi / (raw.mass * omega_m));

  PhysicalParams p;
  p.n_total = raw.n_total;
  p.mass = 1.0;
  p.hbar = 1.0;
  p.omega_a = raw.omega_a / omega_m;
  p.omega_b = raw.omega_b / omega_m;
  p.scattering_length = raw.scattering_length / a_ho;
  p.lambda_coupling = raw.lambda_coupling / omega_m;
  p.u0 = 4.0 * std::numbers::pi * p.hbar * p.hbar * p.scattering_length /
         p.mass;
  p.omega_mean_sq = 0.5 * (p.omega_a * p.omega_a + p.omega_b * p.omega_b);
  p.delta_omega_sq = 0.5 * (p.omega_a * p.omega_a - p.omega_b * p.omega_b);
  p.length_unit_si = a_ho;
  p.time_unit_si = 1.0 / omega_m;
  p.mass_si = raw.mass;
  return p;
}

PhysicalParams make_params_internal(double n_total, double omega_a,
                                    double omega_b, double scattering_length,
                                    double lambda_coupling) {
  require_positive(n_total, "n_total");
  require_positive(omega_a, "omega_a");
  require_positive(omega_b, "omega_b");
  if (scattering_length < 0) {
    throw std::invalid_argument("params: scattering_length must be >= 0");
  }
  if (lambda_coupling < 0) {
    throw std::invalid_argument("params: lambda_coupling must be >= 0");
  }
  PhysicalParams p;
  p.n_total = n_total;
  p.omega_a = omega_a;
  p.omega_b = omega_b;
  p.scattering_length = scattering_length;
  p.lambda_coupling = lambda_coupling;
  p.u0 = 4.0 * std::numbers::pi * scattering_length;
  p.omega_mean_sq = 0.5 * (omega_a * omega_a + omega_b * omega_b);
  p.delta_omega_sq = 0.5 * (omega_a * omega_a - omega_b * omega_b);
  return p;
}

RawParams PhysicalParams::to_raw() const {
  RawParams raw;
  const double omega_m = 1.0 / time_unit_si;
  raw.n_total = n_total;
  raw.mass = mass_si;
  raw.omega_a = omega_a * omega_m;
  raw.omega_b = omega_b * omega_m;
  raw.scattering_length = scattering_length * length_unit_si;
  raw.lambda_coupling = lambda_coupling * omega_m;
  return raw;
}

}  // namespace josim
