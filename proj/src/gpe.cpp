#include "josim/gpe.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace josim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void renormalize(const RadialGrid& grid, std::vector<Complex>& psi,
                 double n_atoms) {
  double nn = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    nn += grid.weight(i) * std::norm(psi[i]);
  const double f = std::sqrt(n_atoms / nn);
  for (auto& v : psi) v *= f;
}

}  // namespace

// Sine-transform workspace for the kinetic sub-step on u = r*psi.  With a
// uniform grid of n points over [0, r_max], the n-2 interior values carry the
// field; RODFT00 diagonalizes the Dirichlet Laplacian with the continuum
// eigenvalues k_q = pi*q/r_max.
struct GpeSolver::Impl {
  int m = 0;  // number of interior nodes
  double norm = 0;
  std::vector<double> k2;  // k_q^2
  std::vector<double> buf_re, buf_im;
  fftw_plan plan_re = nullptr, plan_im = nullptr;

  Impl(int n_points, double r_max) {
    m = n_points - 2;
    if (m < 3) throw std::invalid_argument("grid too small for sine transform");
    norm = 1.0 / (2.0 * (m + 1));
    buf_re.resize(m);
    buf_im.resize(m);
    k2.resize(m);
    for (int q = 1; q <= m; ++q) {
      const double k = M_PI * q / r_max;
      k2[q - 1] = k * k;
    }
    plan_re = fftw_plan_r2r_1d(m, buf_re.data(), buf_re.data(), FFTW_RODFT00,
                               FFTW_MEASURE);
    plan_im = fftw_plan_r2r_1d(m, buf_im.data(), buf_im.data(), FFTW_RODFT00,
                               FFTW_MEASURE);
  }
  ~Impl() {
    if (plan_re) fftw_destroy_plan(plan_re);
    if (plan_im) fftw_destroy_plan(plan_im);
  }

  // exp(-i k^2/2 * tau) in spectral space (real time), applied to psi.
  void kinetic_phase(const RadialGrid& grid, std::vector<Complex>& psi,
                     double tau) {
    to_u(grid, psi);
    fftw_execute(plan_re);
    fftw_execute(plan_im);
    for (int j = 0; j < m; ++j) {
      const double ang = -0.5 * k2[j] * tau;
      const double c = std::cos(ang), s = std::sin(ang);
      const double re = buf_re[j], im = buf_im[j];
      buf_re[j] = c * re - s * im;
      buf_im[j] = s * re + c * im;
    }
    fftw_execute(plan_re);
    fftw_execute(plan_im);
    from_u(grid, psi);
  }

  // exp(-k^2/2 * tau) in spectral space (imaginary time).
  void kinetic_decay(const RadialGrid& grid, std::vector<Complex>& psi,
                     double tau) {
    to_u(grid, psi);
    fftw_execute(plan_re);
    fftw_execute(plan_im);
    for (int j = 0; j < m; ++j) {
      const double f = std::exp(-0.5 * k2[j] * tau);
      buf_re[j] *= f;
      buf_im[j] *= f;
    }
    fftw_execute(plan_re);
    fftw_execute(plan_im);
    from_u(grid, psi);
  }

  void to_u(const RadialGrid& grid, const std::vector<Complex>& psi) {
    for (int j = 0; j < m; ++j) {
      const Complex u = psi[j + 1] * grid.node(j + 1);
      buf_re[j] = u.real();
      buf_im[j] = u.imag();
    }
  }

  void from_u(const RadialGrid& grid, std::vector<Complex>& psi) {
    for (int j = 0; j < m; ++j) {
      psi[j + 1] = Complex(buf_re[j], buf_im[j]) * (norm / grid.node(j + 1));
    }
    // regular limit at the origin: u ~ psi(0) r, extrapolate linearly
    psi[0] = 2.0 * psi[1] - psi[2];
    psi.back() = Complex(0, 0);
  }
};

GpeSolver::GpeSolver(GridPtr grid, const PhysicalParams& params,
                     SolverConfig config)
    : grid_(std::move(grid)), params_(params), config_(config) {
  if (!grid_) throw std::invalid_argument("grid must not be null");
  if (!(config_.dt > 0)) throw std::invalid_argument("dt must be positive");
  impl_ = std::make_unique<Impl>(static_cast<int>(grid_->size()),
                                 grid_->r_max());
}

GpeSolver::~GpeSolver() = default;

namespace {

// Trap plus total-density mean field over tau, in the A/B basis.
void trap_mean_field_ab(const RadialGrid& grid, const PhysicalParams& params,
                        std::vector<Complex>& psi_a,
                        std::vector<Complex>& psi_b, double tau) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    const double rho = std::norm(psi_a[i]) + std::norm(psi_b[i]);
    psi_a[i] *= std::polar(1.0, -(params.potential_a(r) + params.u0 * rho) * tau);
    psi_b[i] *= std::polar(1.0, -(params.potential_b(r) + params.u0 * rho) * tau);
  }
}

// Exact tunnelling rotation over tau: i psi_a' = -lambda psi_b and a <-> b.
void coupling_rotation(std::vector<Complex>& psi_a, std::vector<Complex>& psi_b,
                       double lambda, double tau) {
  const double c = std::cos(lambda * tau), s = std::sin(lambda * tau);
  const Complex is(0, s);
  for (std::size_t i = 0; i < psi_a.size(); ++i) {
    const Complex a = psi_a[i], b = psi_b[i];
    psi_a[i] = c * a + is * b;
    psi_b[i] = is * a + c * b;
  }
}

}  // namespace

void GpeSolver::step_ab(CoupledField& field) const {
  check_same_grid(*grid_, *field.grid);
  if (field.basis != Basis::kAB)
    throw std::invalid_argument("step_ab requires the A/B basis");
  const double dt = config_.dt;
  impl_->kinetic_phase(*grid_, field.first, 0.5 * dt);
  impl_->kinetic_phase(*grid_, field.second, 0.5 * dt);
  trap_mean_field_ab(*grid_, params_, field.first, field.second, 0.5 * dt);
  coupling_rotation(field.first, field.second, params_.lambda_coupling, dt);
  trap_mean_field_ab(*grid_, params_, field.first, field.second, 0.5 * dt);
  impl_->kinetic_phase(*grid_, field.first, 0.5 * dt);
  impl_->kinetic_phase(*grid_, field.second, 0.5 * dt);
  field.time += dt;
}

void GpeSolver::step_pm(CoupledField& field) const {
  check_same_grid(*grid_, *field.grid);
  if (field.basis != Basis::kPlusMinus)
    throw std::invalid_argument("step_pm requires the +/- basis");
  const double dt = config_.dt;
  impl_->kinetic_phase(*grid_, field.first, 0.5 * dt);
  impl_->kinetic_phase(*grid_, field.second, 0.5 * dt);

  // trap-asymmetry coupling at the mid-step time; exact exponential of the
  // Hermitian per-node matrix [[0, g],[g*, 0]], g = dV e^{-2 i lambda t}
  const double t_mid = field.time + 0.5 * dt;
  const Complex phase =
      std::polar(1.0, -2.0 * params_.lambda_coupling * t_mid);
  for (std::size_t i = 0; i < grid_->size(); ++i) {
    const double r = grid_->node(i);
    const double rho = std::norm(field.first[i]) + std::norm(field.second[i]);
    const Complex mean =
        std::polar(1.0, -(params_.mean_potential(r) + params_.u0 * rho) * dt);
    const double dv = params_.delta_potential(r);
    const double c = std::cos(dv * dt), s = std::sin(dv * dt);
    const Complex p = field.first[i], m = field.second[i];
    field.first[i] = mean * (c * p - Complex(0, s) * phase * m);
    field.second[i] = mean * (c * m - Complex(0, s) * std::conj(phase) * p);
  }

  impl_->kinetic_phase(*grid_, field.first, 0.5 * dt);
  impl_->kinetic_phase(*grid_, field.second, 0.5 * dt);
  field.time += dt;
}

std::vector<Complex> GpeSolver::ground_state(double n_atoms) const {
  if (n_atoms <= 0) throw std::invalid_argument("n_atoms must be positive");
  const std::size_t n = grid_->size();

  // start from the Thomas-Fermi profile in the mean trap, or from the
  // oscillator mode if the interaction is off
  std::vector<Complex> psi(n);
  if (params_.u0 > 0) {
    const double r0 = std::pow(
        15.0 * n_atoms * params_.u0 / (4.0 * M_PI * params_.omega_mean_sq),
        0.2);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid_->node(i) / r0;
      psi[i] = x < 1.0 ? std::sqrt(15.0 * n_atoms / (8.0 * M_PI * r0 * r0 * r0) *
                                   (1.0 - x * x))
                       : 0.0;
    }
  } else {
    const double w = std::sqrt(params_.omega_mean_sq);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid_->node(i);
      psi[i] = std::exp(-0.5 * w * r * r);
    }
  }
  renormalize(*grid_, psi, n_atoms);

  const double tau = config_.imag_dt;
  double mu_prev = chemical_potential(psi);
  for (int it = 0; it < config_.imag_max_steps; ++it) {
    impl_->kinetic_decay(*grid_, psi, 0.5 * tau);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = params_.mean_potential(grid_->node(i)) +
                       params_.u0 * std::norm(psi[i]);
      psi[i] *= std::exp(-v * tau);
    }
    impl_->kinetic_decay(*grid_, psi, 0.5 * tau);
    renormalize(*grid_, psi, n_atoms);
    if ((it + 1) % 50 == 0) {
      const double mu = chemical_potential(psi);
      if (std::abs(mu - mu_prev) < config_.imag_tol * std::abs(mu) * 50) break;
      mu_prev = mu;
    }
  }
  // strip any residual phase
  for (auto& v : psi) v = std::abs(v);
  return psi;
}

double GpeSolver::kinetic_energy(const std::vector<Complex>& psi) const {
  // int |grad psi|^2 4 pi r^2 dr = 4 pi int |du/dr|^2 dr for u = r psi
  const std::size_t n = grid_->size();
  const double h = grid_->spacing();
  double acc = 0;
  Complex u_prev(0, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex u_next = psi[i + 1] * grid_->node(i + 1);
    acc += std::norm((u_next - u_prev) / h) * h;  // midpoint derivative
    u_prev = u_next;
  }
  return 0.5 * 4.0 * M_PI * acc;  // hbar = m = 1
}

double GpeSolver::chemical_potential(const std::vector<Complex>& psi) const {
  double pot = 0, n_atoms = 0;
  for (std::size_t i = 0; i < grid_->size(); ++i) {
    const double r = grid_->node(i);
    const double rho = std::norm(psi[i]);
    pot += grid_->weight(i) *
           (params_.mean_potential(r) + params_.u0 * rho) * rho;
    n_atoms += grid_->weight(i) * rho;
  }
  return (kinetic_energy(psi) + pot) / n_atoms;
}

double GpeSolver::total_energy(const CoupledField& field) const {
  check_same_grid(*grid_, *field.grid);
  const CoupledField* ab = &field;
  CoupledField mapped;
  if (field.basis != Basis::kAB) {
    mapped = transform_basis(field, params_);
    ab = &mapped;
  }
  double e = kinetic_energy(ab->first) + kinetic_energy(ab->second);
  Complex overlap(0, 0);
  for (std::size_t i = 0; i < grid_->size(); ++i) {
    const double r = grid_->node(i);
    const double ra = std::norm(ab->first[i]);
    const double rb = std::norm(ab->second[i]);
    e += grid_->weight(i) *
         (params_.potential_a(r) * ra + params_.potential_b(r) * rb +
          0.5 * params_.u0 * (ra + rb) * (ra + rb));
    overlap += grid_->weight(i) * std::conj(ab->first[i]) * ab->second[i];
  }
  e -= params_.hbar * params_.lambda_coupling * 2.0 * overlap.real();
  return e;
}

CoupledField transform_basis(const CoupledField& field,
                             const PhysicalParams& params) {
  CoupledField out;
  out.grid = field.grid;
  out.time = field.time;
  const std::size_t n = field.first.size();
  out.first.resize(n);
  out.second.resize(n);
  const Complex rot = std::polar(1.0, params.lambda_coupling * field.time);
  if (field.basis == Basis::kAB) {
    out.basis = Basis::kPlusMinus;
    const Complex fp = kInvSqrt2 * std::conj(rot);  // e^{-i lambda t}/sqrt2
    const Complex fm = kInvSqrt2 * rot;             // e^{+i lambda t}/sqrt2
    for (std::size_t i = 0; i < n; ++i) {
      out.first[i] = fp * (field.first[i] + field.second[i]);
      out.second[i] = fm * (field.first[i] - field.second[i]);
    }
  } else {
    out.basis = Basis::kAB;
    const Complex gp = kInvSqrt2 * rot;             // e^{+i lambda t}/sqrt2
    const Complex gm = kInvSqrt2 * std::conj(rot);  // e^{-i lambda t}/sqrt2
    for (std::size_t i = 0; i < n; ++i) {
      out.first[i] = gp * field.first[i] + gm * field.second[i];
      out.second[i] = gp * field.first[i] - gm * field.second[i];
    }
  }
  return out;
}

GpeObservables measure(const CoupledField& field, const GpeSolver& solver) {
  GpeObservables obs;
  const auto& grid = *field.grid;
  Complex overlap(0, 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    obs.n_first += grid.weight(i) * std::norm(field.first[i]);
    obs.n_second += grid.weight(i) * std::norm(field.second[i]);
    overlap += grid.weight(i) * std::conj(field.first[i]) * field.second[i];
  }
  obs.delta_n = obs.n_first - obs.n_second;
  obs.cross_corr = overlap;
  obs.delta_phi = -std::arg(overlap);  // Phi_first - Phi_second
  obs.energy = solver.total_energy(field);
  return obs;
}

CoupledField make_josephson_initial(const GpeSolver& solver, GridPtr grid,
                                    double n_total, double delta_n,
                                    double delta_phi) {
  if (std::abs(delta_n) > n_total)
    throw std::invalid_argument("|delta_n| must not exceed n_total");
  const std::vector<Complex> psi0 = solver.ground_state(n_total);
  const double fa = std::sqrt(0.5 * (n_total + delta_n) / n_total);
  const double fb = std::sqrt(0.5 * (n_total - delta_n) / n_total);
  CoupledField field;
  field.grid = std::move(grid);
  field.basis = Basis::kAB;
  field.time = 0;
  const std::size_t n = psi0.size();
  field.first.resize(n);
  field.second.resize(n);
  const Complex pa = std::polar(fa, 0.5 * delta_phi);
  const Complex pb = std::polar(fb, -0.5 * delta_phi);
  for (std::size_t i = 0; i < n; ++i) {
    field.first[i] = pa * psi0[i];
    field.second[i] = pb * psi0[i];
  }
  return field;
}

}  // namespace josim
