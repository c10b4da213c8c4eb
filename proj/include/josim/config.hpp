#pragma once

#include <map>
#include <string>
#include <vector>

#include "josim/params.hpp"

namespace josim {

// Resolved run configuration.  The file format is flat INI-style
// key=value with dotted section prefixes, e.g. params.lambda_coupling=0.5.
struct RunConfig {
  // params block: two-mode physical inputs in trap units unless a raw
  // (SI) block is given instead.
  double n_atoms = 1e5;
  double lambda_coupling = 0.5;
  double omega_a_sq = 1.0;
  double omega_b_sq = 1.0;
  // Convenience: nonzero overrides the split, keeping the mean curvature of
  // omega_a_sq/omega_b_sq: wa^2 = mean + d, wb^2 = mean - d.
  double delta_omega_sq = 0.0;
  double u0 = 0.0;         // 0 -> derived from nu0 below
  double nu0 = 0.0;        // N*u0 product; convenience alternative to u0

  // grid block
  double r_max_factor = 2.0;  // r_max = factor * r0
  int n_points = 513;

  // scenario block
  std::string scenario_name = "default";
  double delta_n0 = 0.0;
  double delta_phi0 = 0.0;
  double delta_theta0 = 0.0;
  double p2_rel0 = 1.0;
  double q2_rel0 = 0.0;

  // solver block
  double dt = 1e-3;
  int steps = 1000;
  std::string scheme = "rk4";             // rk4 | split-step
  std::string coefficient_mode = "nested";  // nested | flat drift grouping

  // oracle block (exact two-mode model; the interaction split is an
  // oracle-only knob)
  int oracle_n_atoms = 200;
  double oracle_u_aa = 0.0;
  double oracle_u_ab = 0.0;
  double oracle_delta_e = 0.0;
  double oracle_theta = 1.5707963267948966;  // coherent-state polar angle
  double oracle_phi = 0.0;

  // output block
  std::string out_dir = ".";
  bool emit_svg = false;
};

// Parse a config file, then apply --set style overrides.  Unknown keys and
// malformed lines raise std::invalid_argument.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides);
RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides);

// Serialize back to the same key=value format (the run-manifest body);
// re-ingesting the output reproduces the config exactly.
std::string serialize_config(const RunConfig& cfg);

// Physical parameters implied by the config (trap units).
PhysicalParams config_params(const RunConfig& cfg);

}  // namespace josim
