#include "josim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace josim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Binding {
  std::function<void(RunConfig&, const std::string&)> set;
};

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': not a number: " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key +
                                "': trailing characters in: " + value);
  return d;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  if (d != std::floor(d))
    throw std::invalid_argument("config key '" + key +
                                "': expected an integer, got " + value);
  return static_cast<int>(d);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config key '" + key +
                              "': expected true/false, got " + value);
}

const std::map<std::string, Binding>& bindings() {
  auto dbl = [](double RunConfig::* f) {
    return Binding{[f](RunConfig& c, const std::string& v) {
      c.*f = parse_double("", v);
    }};
  };
  auto integer = [](int RunConfig::* f) {
    return Binding{
        [f](RunConfig& c, const std::string& v) { c.*f = parse_int("", v); }};
  };
  auto str = [](std::string RunConfig::* f) {
    return Binding{[f](RunConfig& c, const std::string& v) { c.*f = v; }};
  };
  auto boolean = [](bool RunConfig::* f) {
    return Binding{
        [f](RunConfig& c, const std::string& v) { c.*f = parse_bool("", v); }};
  };
  static const std::map<std::string, Binding> table = {
      {"params.n_atoms", dbl(&RunConfig::n_atoms)},
      {"params.lambda_coupling", dbl(&RunConfig::lambda_coupling)},
      {"params.omega_a_sq", dbl(&RunConfig::omega_a_sq)},
      {"params.omega_b_sq", dbl(&RunConfig::omega_b_sq)},
      {"params.delta_omega_sq", dbl(&RunConfig::delta_omega_sq)},
      {"params.u0", dbl(&RunConfig::u0)},
      {"params.nu0", dbl(&RunConfig::nu0)},
      {"grid.r_max_factor", dbl(&RunConfig::r_max_factor)},
      {"grid.n_points", integer(&RunConfig::n_points)},
      {"scenario.name", str(&RunConfig::scenario_name)},
      {"scenario.delta_n0", dbl(&RunConfig::delta_n0)},
      {"scenario.delta_phi0", dbl(&RunConfig::delta_phi0)},
      {"scenario.delta_theta0", dbl(&RunConfig::delta_theta0)},
      {"scenario.p2_rel0", dbl(&RunConfig::p2_rel0)},
      {"scenario.q2_rel0", dbl(&RunConfig::q2_rel0)},
      {"solver.dt", dbl(&RunConfig::dt)},
      {"solver.steps", integer(&RunConfig::steps)},
      {"solver.scheme", str(&RunConfig::scheme)},
      {"solver.coefficient_mode", str(&RunConfig::coefficient_mode)},
      {"oracle.n_atoms", integer(&RunConfig::oracle_n_atoms)},
      {"oracle.u_aa", dbl(&RunConfig::oracle_u_aa)},
      {"oracle.u_ab", dbl(&RunConfig::oracle_u_ab)},
      {"oracle.delta_e", dbl(&RunConfig::oracle_delta_e)},
      {"oracle.theta", dbl(&RunConfig::oracle_theta)},
      {"oracle.phi", dbl(&RunConfig::oracle_phi)},
      {"output.directory", str(&RunConfig::out_dir)},
      {"output.emit_svg", boolean(&RunConfig::emit_svg)},
  };
  return table;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = bindings();
  const auto it = table.find(key);
  if (it == table.end())
    throw std::invalid_argument("unknown config key: " + key);
  try {
    it->second.set(cfg, value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("config key '" + key + "': " + e.what());
  }
}

void apply_line(RunConfig& cfg, const std::string& raw, int line_no) {
  const std::string line = trim(raw);
  if (line.empty() || line[0] == '#' || line[0] == ';') return;
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": missing '=' in: " + line);
  apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

void validate(const RunConfig& cfg) {
  if (cfg.n_atoms <= 0)
    throw std::invalid_argument("params.n_atoms must be positive");
  if (cfg.omega_a_sq <= 0 || cfg.omega_b_sq <= 0)
    throw std::invalid_argument("trap curvatures must be positive");
  if (cfg.u0 < 0 || cfg.nu0 < 0)
    throw std::invalid_argument("interaction strength must be >= 0");
  if (cfg.n_points < 3 || cfg.n_points % 2 == 0)
    throw std::invalid_argument("grid.n_points must be odd and >= 3");
  if (cfg.r_max_factor <= 1.0)
    throw std::invalid_argument("grid.r_max_factor must exceed 1");
  if (cfg.dt <= 0 || cfg.steps <= 0)
    throw std::invalid_argument("solver.dt and solver.steps must be positive");
  if (cfg.scheme != "rk4" && cfg.scheme != "split-step")
    throw std::invalid_argument("solver.scheme must be rk4 or split-step");
  if (cfg.coefficient_mode != "nested" && cfg.coefficient_mode != "flat")
    throw std::invalid_argument(
        "solver.coefficient_mode must be nested or flat");
  if (std::abs(cfg.delta_n0) > cfg.n_atoms)
    throw std::invalid_argument("scenario.delta_n0 must satisfy |dN| <= N");
  if (cfg.p2_rel0 < 0 || cfg.q2_rel0 < 0)
    throw std::invalid_argument("initial second moments must be >= 0");
  if (cfg.oracle_n_atoms < 1 || cfg.oracle_n_atoms > 5000)
    throw std::invalid_argument("oracle.n_atoms must lie in [1, 5000]");
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) apply_line(cfg, line, ++line_no);
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override missing '=': " + ov);
    apply(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "params.n_atoms=" << cfg.n_atoms << '\n'
      << "params.lambda_coupling=" << cfg.lambda_coupling << '\n'
      << "params.omega_a_sq=" << cfg.omega_a_sq << '\n'
      << "params.omega_b_sq=" << cfg.omega_b_sq << '\n'
      << "params.delta_omega_sq=" << cfg.delta_omega_sq << '\n'
      << "params.u0=" << cfg.u0 << '\n'
      << "params.nu0=" << cfg.nu0 << '\n'
      << "grid.r_max_factor=" << cfg.r_max_factor << '\n'
      << "grid.n_points=" << cfg.n_points << '\n'
      << "scenario.name=" << cfg.scenario_name << '\n'
      << "scenario.delta_n0=" << cfg.delta_n0 << '\n'
      << "scenario.delta_phi0=" << cfg.delta_phi0 << '\n'
      << "scenario.delta_theta0=" << cfg.delta_theta0 << '\n'
      << "scenario.p2_rel0=" << cfg.p2_rel0 << '\n'
      << "scenario.q2_rel0=" << cfg.q2_rel0 << '\n'
      << "solver.dt=" << cfg.dt << '\n'
      << "solver.steps=" << cfg.steps << '\n'
      << "solver.scheme=" << cfg.scheme << '\n'
      << "solver.coefficient_mode=" << cfg.coefficient_mode << '\n'
      << "oracle.n_atoms=" << cfg.oracle_n_atoms << '\n'
      << "oracle.u_aa=" << cfg.oracle_u_aa << '\n'
      << "oracle.u_ab=" << cfg.oracle_u_ab << '\n'
      << "oracle.delta_e=" << cfg.oracle_delta_e << '\n'
      << "oracle.theta=" << cfg.oracle_theta << '\n'
      << "oracle.phi=" << cfg.oracle_phi << '\n'
      << "output.directory=" << cfg.out_dir << '\n'
      << "output.emit_svg=" << (cfg.emit_svg ? "true" : "false") << '\n';
  return out.str();
}

PhysicalParams config_params(const RunConfig& cfg) {
  double u0 = cfg.u0;
  if (u0 == 0 && cfg.nu0 > 0) u0 = cfg.nu0 / cfg.n_atoms;
  const double a_sc = u0 / (4.0 * M_PI);  // hbar = m = 1
  double wa2 = cfg.omega_a_sq, wb2 = cfg.omega_b_sq;
  if (cfg.delta_omega_sq != 0) {
    const double mean = 0.5 * (wa2 + wb2);
    wa2 = mean + cfg.delta_omega_sq;
    wb2 = mean - cfg.delta_omega_sq;
    if (wa2 <= 0 || wb2 <= 0)
      throw std::invalid_argument(
          "params.delta_omega_sq exceeds the mean trap curvature");
  }
  return make_params_internal(cfg.n_atoms, std::sqrt(wa2), std::sqrt(wb2),
                              a_sc, cfg.lambda_coupling);
}

}  // namespace josim
