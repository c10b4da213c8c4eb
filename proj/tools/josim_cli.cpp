#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "josim/config.hpp"
#include "josim/csv.hpp"
#include "josim/gpe.hpp"
#include "josim/grid.hpp"
#include "josim/hydro.hpp"
#include "josim/moments.hpp"
#include "josim/oracle.hpp"
#include "josim/perturbation.hpp"
#include "josim/svg.hpp"
#include "josim/two_mode.hpp"

namespace fs = std::filesystem;
using namespace josim;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  bool svg = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (key=value)");
  cmd->add_option("--set", opts.overrides, "override key=value (repeatable)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_flag("--svg", opts.svg, "emit SVG plots alongside CSV");
}

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg = opts.config_path.empty()
                      ? parse_config_text("", opts.overrides)
                      : parse_config(opts.config_path, opts.overrides);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.svg) cfg.emit_svg = true;
  return cfg;
}

void write_manifest(const RunConfig& cfg, const std::string& name) {
  const fs::path path = fs::path(cfg.out_dir) / (name + "_manifest.txt");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# josim " << kVersion << "\n" << serialize_config(cfg);
}

void emit(const RunConfig& cfg, const std::string& name, const CsvTable& table,
          const std::string& x_col, const std::vector<std::string>& y_cols) {
  fs::create_directories(cfg.out_dir);
  write_csv(table, (fs::path(cfg.out_dir) / (name + ".csv")).string());
  write_manifest(cfg, name);
  if (cfg.emit_svg && table.n_rows() > 1)
    write_plot(table, x_col, y_cols,
               (fs::path(cfg.out_dir) / (name + ".svg")).string(), name);
}

std::vector<double> make_times(const RunConfig& cfg) {
  std::vector<double> t(cfg.steps + 1);
  for (int i = 0; i <= cfg.steps; ++i) t[i] = i * cfg.dt;
  return t;
}

GridPtr make_grid(const RunConfig& cfg, const PhysicalParams& params) {
  const double r0 =
      equilibrium_radius(params.n_total, params.omega_mean_sq, params.u0);
  return std::make_shared<RadialGrid>(cfg.r_max_factor * r0,
                                      static_cast<std::size_t>(cfg.n_points));
}

ZeroOrderSolution zero_order(const RunConfig& cfg,
                             const PhysicalParams& params, GridPtr grid) {
  const double n_plus = 0.5 * (cfg.n_atoms + cfg.delta_n0);
  const double n_minus = 0.5 * (cfg.n_atoms - cfg.delta_n0);
  return make_zero_order_solution(params, std::move(grid), n_plus, n_minus,
                                  cfg.delta_theta0);
}

void run_two_mode(const RunConfig& cfg) {
  const PhysicalParams params = config_params(cfg);
  const TwoModeState s0{cfg.delta_n0, cfg.delta_phi0};
  const std::vector<double> times = make_times(cfg);
  const TwoModeTrajectory traj = evolve_two_mode(s0, params, times);

  CsvTable t;
  std::vector<double> dn, dphi, c, dn_cf;
  for (std::size_t i = 0; i < times.size(); ++i) {
    dn.push_back(traj.states[i].delta_n);
    dphi.push_back(traj.states[i].delta_phi);
    c.push_back(traj.c_values[i]);
    dn_cf.push_back(closed_form_delta_n(s0, params, times[i]));
  }
  t.add_column("t", "1/omega_m", times);
  t.add_column("delta_n", "atoms", dn);
  t.add_column("delta_phi", "rad", dphi);
  t.add_column("c_invariant", "hbar*omega_m", c);
  t.add_column("delta_n_closed_form", "atoms", dn_cf);
  emit(cfg, "two_mode", t, "t", {"delta_n", "delta_n_closed_form"});
}

void run_hydro(const RunConfig& cfg) {
  const PhysicalParams params = config_params(cfg);
  const TfZeroOrder tf =
      make_tf_zero_order(params.n_total, params.omega_mean_sq, params.u0);
  const std::vector<double> times = make_times(cfg);
  const BreathingTrajectory traj = evolve_breathing(
      tf.r0, 0.0, params.n_total, params.omega_mean_sq, params.u0, times);
  const HydroPhases ph =
      phase_coefficients(traj, params.n_total, params.u0, 0.0, 0.0);

  CsvTable t;
  t.add_column("t", "1/omega_m", times);
  t.add_column("r0", "a_ho", traj.radius);
  t.add_column("r0_dot", "a_ho*omega_m", traj.radius_dot);
  t.add_column("a_coeff", "omega_m", ph.a_coeff);
  t.add_column("b_plus", "hbar", ph.b_plus);
  t.add_column("b_minus", "hbar", ph.b_minus);
  emit(cfg, "hydro", t, "t", {"r0"});

  std::cout << "TF radius r0 = " << tf.r0 << " a_ho, mu = " << tf.mu
            << " hbar*omega_m, boundary healing length xi = " << tf.xi
            << " a_ho (xi/r0 = " << tf.xi / tf.r0 << ")\n";

  // Order-of-magnitude sanity line: single-condensate phase diffusion for
  // 5e5 Rb atoms in a 59 Hz trap, t_D ~ hbar / (dmu/dN * sqrt(N)).
  {
    RawParams raw;
    raw.n_total = 5e5;
    raw.mass = 1.44316e-25;
    raw.omega_a = raw.omega_b = 2.0 * std::numbers::pi * 59.0;
    raw.scattering_length = 5e-9;
    raw.lambda_coupling = 0.0;
    const PhysicalParams jila = make_params(raw);
    const TfZeroOrder jtf =
        make_tf_zero_order(jila.n_total, jila.omega_mean_sq, jila.u0);
    const double dmu_dn = 0.4 * jtf.mu / jila.n_total;  // TF: mu ~ N^{2/5}
    const double t_d = jila.hbar / (dmu_dn * std::sqrt(jila.n_total));
    std::cout << "sanity: single-condensate phase diffusion time ~ "
              << t_d * jila.time_unit_si
              << " s for 5e5 atoms in a 59 Hz trap (expected order: 0.5 s)\n";
  }
}

void run_gpe(const RunConfig& cfg) {
  const PhysicalParams params = config_params(cfg);
  GridPtr grid = make_grid(cfg, params);
  GpeSolver solver(grid, params, SolverConfig{cfg.dt});
  CoupledField field = make_josephson_initial(solver, grid, cfg.n_atoms,
                                              cfg.delta_n0, cfg.delta_phi0);
  const bool pm = cfg.scenario_name == "plus-minus";
  if (pm) field = transform_basis(field, params);

  const int sample_every = std::max(1, cfg.steps / 2000);
  CsvTable t;
  std::vector<double> times, na, nb, dn, dphi, recc, imcc, energy;
  auto record = [&]() {
    const CoupledField ab = pm ? transform_basis(field, params) : field;
    const GpeObservables obs = measure(ab, solver);
    times.push_back(field.time);
    na.push_back(obs.n_first);
    nb.push_back(obs.n_second);
    dn.push_back(obs.delta_n);
    dphi.push_back(obs.delta_phi);
    recc.push_back(obs.cross_corr.real());
    imcc.push_back(obs.cross_corr.imag());
    energy.push_back(obs.energy);
  };
  record();
  for (int i = 1; i <= cfg.steps; ++i) {
    if (pm)
      solver.step_pm(field);
    else
      solver.step_ab(field);
    if (i % sample_every == 0 || i == cfg.steps) record();
  }
  t.add_column("t", "1/omega_m", times);
  t.add_column("n_a", "atoms", na);
  t.add_column("n_b", "atoms", nb);
  t.add_column("delta_n", "atoms", dn);
  t.add_column("delta_phi", "rad", dphi);
  t.add_column("re_cross_corr", "atoms", recc);
  t.add_column("im_cross_corr", "atoms", imcc);
  t.add_column("energy", "hbar*omega_m", energy);
  emit(cfg, "gpe", t, "t", {"delta_n"});
}

void run_moments(const RunConfig& cfg) {
  const PhysicalParams params = config_params(cfg);
  GridPtr grid = make_grid(cfg, params);
  const ZeroOrderSolution zo = zero_order(cfg, params, grid);
  const double eps = zo.tf.xi / zo.tf.r0;
  const DriftGrouping grouping = cfg.coefficient_mode == "flat"
                                     ? DriftGrouping::kFlat
                                     : DriftGrouping::kNested;
  auto generator = [&](double time) {
    return assemble_generator(analytic_overlaps(zo, params, time, eps), params,
                              grouping);
  };

  MomentState m0;
  m0.cov(0, 0) = cfg.p2_rel0;
  m0.cov(1, 1) = cfg.q2_rel0;
  m0.cov(2, 2) = cfg.p2_rel0;
  m0.cov(3, 3) = cfg.q2_rel0;
  const std::vector<double> times = make_times(cfg);
  const MomentTrajectory traj = propagate_moments(m0, generator, times);

  CsvTable t;
  std::vector<double> qt, qr, var_qr, var_pr, decay;
  for (const MomentState& s : traj.states) {
    qt.push_back(s.mean(1));
    qr.push_back(s.mean(3));
    var_qr.push_back(s.cov(3, 3));
    var_pr.push_back(s.cov(2, 2));
    decay.push_back(correlation_decay(s, params.hbar));
  }
  t.add_column("t", "1/omega_m", times);
  t.add_column("mean_q_tot", "hbar", qt);
  t.add_column("mean_q_rel", "hbar", qr);
  t.add_column("var_q_rel", "hbar^2", var_qr);
  t.add_column("var_p_rel", "1", var_pr);
  t.add_column("correlation_decay", "1", decay);
  emit(cfg, "moments", t, "t", {"correlation_decay"});
}

CsvTable dephasing_table(const RunConfig& cfg) {
  const PhysicalParams params = config_params(cfg);
  GridPtr grid = make_grid(cfg, params);
  const ZeroOrderSolution zo = zero_order(cfg, params, grid);
  const PerturbationCoefficients pc =
      dephasing_rate(params, zo, cfg.p2_rel0);
  CsvTable t;
  t.add_column("v", "1", {pc.v});
  t.add_column("log_factor", "1", {pc.log_factor});
  t.add_column("q1_amplitude", "hbar", {pc.q1_amplitude});
  t.add_column("q2_rate", "omega_m", {pc.q2_rate});
  t.add_column("tau_d", "1/omega_m", {pc.tau_d});
  t.add_column("q2_rate_alt", "omega_m", {pc.q2_rate_alt});
  t.add_column("tau_d_alt", "1/omega_m", {pc.tau_d_alt});
  return t;
}

void run_dephasing(const RunConfig& cfg) {
  const CsvTable report = dephasing_table(cfg);
  fs::create_directories(cfg.out_dir);
  write_csv(report, (fs::path(cfg.out_dir) / "dephasing.csv").string());
  write_manifest(cfg, "dephasing");

  // Gaussian decay profile implied by the secular growth.
  const double tau = report.column("tau_d").front();
  const std::vector<double> times = make_times(cfg);
  std::vector<double> decay;
  for (double time : times)
    decay.push_back(std::isfinite(tau) ? std::exp(-(time / tau) * (time / tau))
                                       : 1.0);
  CsvTable prof;
  prof.add_column("t", "1/omega_m", times);
  prof.add_column("correlation_decay", "1", decay);
  write_csv(prof,
            (fs::path(cfg.out_dir) / "dephasing_profile.csv").string());
  if (cfg.emit_svg)
    write_plot(prof, "t", {"correlation_decay"},
               (fs::path(cfg.out_dir) / "dephasing_profile.svg").string(),
               "dephasing_profile");
  std::cout << "q2_rate = " << report.column("q2_rate").front()
            << " omega_m, tau_d = " << tau << " 1/omega_m, tau_d_alt = "
            << report.column("tau_d_alt").front() << " 1/omega_m\n";
}

void run_oracle(const RunConfig& cfg) {
  const TwoModeHamiltonian h = build_hamiltonian(
      cfg.oracle_n_atoms, 1.0, cfg.lambda_coupling, cfg.oracle_u_aa,
      cfg.oracle_u_ab, cfg.oracle_delta_e);
  const FockVector s0 =
      coherent_state(cfg.oracle_n_atoms, cfg.oracle_theta, cfg.oracle_phi);
  const std::vector<double> times = make_times(cfg);
  const OracleTrajectory traj = evolve_exact(s0, h, times);

  CsvTable t;
  t.add_column("t", "1/omega_m", times);
  t.add_column("delta_n", "atoms", traj.delta_n);
  t.add_column("var_delta_n", "atoms^2", traj.var_delta_n);
  t.add_column("visibility", "1", traj.visibility);
  t.add_column("energy", "hbar*omega_m", traj.energy);
  emit(cfg, "oracle", t, "t", {"visibility"});
}

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("sweep axis must be key=v1,v2,...: " + spec);
  SweepAxis axis;
  axis.key = spec.substr(0, eq);
  std::istringstream vals(spec.substr(eq + 1));
  std::string cell;
  while (std::getline(vals, cell, ',')) axis.values.push_back(std::stod(cell));
  if (axis.values.empty())
    throw std::invalid_argument("sweep axis has no values: " + spec);
  return axis;
}

void run_sweep(const CommonOpts& opts, const std::vector<std::string>& axes) {
  if (axes.empty() || axes.size() > 2)
    throw std::invalid_argument("sweep needs one or two --param axes");
  std::vector<SweepAxis> parsed;
  for (const auto& a : axes) parsed.push_back(parse_axis(a));
  const SweepAxis& ax1 = parsed[0];
  const SweepAxis ax2 =
      parsed.size() > 1 ? parsed[1] : SweepAxis{"", {0.0}};

  const RunConfig base = load_config(opts);
  CsvTable report;
  std::vector<double> c1, c2, v, q1, rate, tau, rate_alt, tau_alt;
  int run_index = 0;
  for (double v1 : ax1.values) {
    for (double v2 : ax2.values) {
      std::vector<std::string> overrides = opts.overrides;
      overrides.push_back(ax1.key + "=" + std::to_string(v1));
      if (!ax2.key.empty())
        overrides.push_back(ax2.key + "=" + std::to_string(v2));
      RunConfig cfg = opts.config_path.empty()
                          ? parse_config_text("", overrides)
                          : parse_config(opts.config_path, overrides);
      if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
      char sub[32];
      std::snprintf(sub, sizeof sub, "run_%03d", run_index++);
      cfg.out_dir = (fs::path(cfg.out_dir) / sub).string();
      fs::create_directories(cfg.out_dir);
      const CsvTable one = dephasing_table(cfg);
      write_csv(one, (fs::path(cfg.out_dir) / "dephasing.csv").string());
      write_manifest(cfg, "dephasing");
      c1.push_back(v1);
      c2.push_back(v2);
      v.push_back(one.column("v").front());
      q1.push_back(one.column("q1_amplitude").front());
      rate.push_back(one.column("q2_rate").front());
      tau.push_back(one.column("tau_d").front());
      rate_alt.push_back(one.column("q2_rate_alt").front());
      tau_alt.push_back(one.column("tau_d_alt").front());
    }
  }
  report.add_column(ax1.key, "", c1);
  if (!ax2.key.empty()) report.add_column(ax2.key, "", c2);
  report.add_column("v", "1", v);
  report.add_column("q1_amplitude", "hbar", q1);
  report.add_column("q2_rate", "omega_m", rate);
  report.add_column("tau_d", "1/omega_m", tau);
  report.add_column("q2_rate_alt", "omega_m", rate_alt);
  report.add_column("tau_d_alt", "1/omega_m", tau_alt);

  RunConfig cfg = base;
  fs::create_directories(cfg.out_dir);
  write_csv(report, (fs::path(cfg.out_dir) / "sweep.csv").string());
  write_manifest(cfg, "sweep");
  if (cfg.emit_svg && report.n_rows() > 1)
    write_plot(report, ax1.key, {"q2_rate"},
               (fs::path(cfg.out_dir) / "sweep.svg").string(), "sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Josephson-oscillation dephasing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOpts opts;
  std::vector<std::string> sweep_axes;
  CLI::App* two_mode = app.add_subcommand(
      "two-mode", "classical two-mode Josephson dynamics and closed forms");
  CLI::App* hydro = app.add_subcommand(
      "hydro", "Thomas-Fermi profile, breathing radius, phase coefficients");
  CLI::App* gpe =
      app.add_subcommand("gpe", "mean-field evolution (A/B or +/- basis)");
  CLI::App* moments = app.add_subcommand(
      "moments", "fluctuation-moment propagation and correlation decay");
  CLI::App* dephasing = app.add_subcommand(
      "dephasing", "asymmetric-trap dephasing rates, both variants");
  CLI::App* oracle =
      app.add_subcommand("oracle", "exact two-mode quantum dynamics");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "grid over one or two config keys, aggregated report");
  sweep->add_option("--param", sweep_axes,
                    "axis key=v1,v2,... (repeatable, max 2)");
  for (CLI::App* cmd :
       {two_mode, hydro, gpe, moments, dephasing, oracle, sweep})
    add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (two_mode->parsed()) run_two_mode(load_config(opts));
    if (hydro->parsed()) run_hydro(load_config(opts));
    if (gpe->parsed()) run_gpe(load_config(opts));
    if (moments->parsed()) run_moments(load_config(opts));
    if (dephasing->parsed()) run_dephasing(load_config(opts));
    if (oracle->parsed()) run_oracle(load_config(opts));
    if (sweep->parsed()) run_sweep(opts, sweep_axes);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
