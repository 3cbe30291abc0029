#include "turnstile/config.hpp"

#include <fstream>
#include <sstream>

namespace turnstile {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

// "(a,b); (c,d); ..." with optional parentheses
std::vector<std::array<double, 2>> parse_vertices(const std::string& key,
                                                  const std::string& v) {
  std::vector<std::array<double, 2>> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::string t = trim(item);
    if (t.empty()) continue;
    if (t.front() == '(') t.erase(0, 1);
    if (!t.empty() && t.back() == ')') t.pop_back();
    const auto comma = t.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("config key '" + key + "': vertex needs 'u-,u+': '" +
                        item + "'");
    }
    out.push_back({parse_double(key, trim(t.substr(0, comma))),
                   parse_double(key, trim(t.substr(comma + 1)))});
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_int(key, t));
  }
  return out;
}

}  // namespace

PumpCycle RunConfig::cycle() const {
  if (cycle_kind == "square") return PumpCycle::square(u_min, u_max);
  PumpCycle c;
  c.vertices = vertices;
  if (!c.vertices.empty() && c.vertices.front() != c.vertices.back()) {
    c.vertices.push_back(c.vertices.front());  // close the polygon
  }
  return c;
}

PumpOptions RunConfig::pump_options() const {
  PumpOptions opt;
  opt.eta = eta;
  opt.green.abs_tol = k_abs_tol;
  opt.leg.abs_tol = leg_abs_tol;
  opt.leg.rel_tol = leg_rel_tol;
  opt.pairing = pairing;
  opt.evanescent = evanescent;
  return opt;
}

PairDistribution RunConfig::distribution() const {
  PairDistribution d;
  d.e_max = e_max;
  d.beta = beta;
  d.mode = mode;
  return d;
}

void RunConfig::validate() const {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (eta <= 0.0) throw ConfigError("eta must be > 0");
  if (k_abs_tol <= 0.0 || leg_abs_tol <= 0.0 || leg_rel_tol <= 0.0) {
    throw ConfigError("all quadrature tolerances must be > 0");
  }
  if (cycle_kind != "square" && cycle_kind != "vertices") {
    throw ConfigError("cycle must be 'square' or 'vertices'");
  }
  if (cycle_kind == "vertices" && vertices.size() < 2) {
    throw ConfigError("vertex cycle needs at least two vertices");
  }
  if (mode == DistributionMode::finite_T && beta <= 0.0) {
    throw ConfigError("finite_T mode needs beta > 0");
  }
  if (green_n < 1 || fig2b_n < 1) throw ConfigError("grids must be non-empty");
  if (fig3_step <= 0.0 || fig3_e_hi < fig3_e_lo) {
    throw ConfigError("energy sweep grid is empty or inverted");
  }
  if (fig3_m_list.empty()) throw ConfigError("fig3 m list must be non-empty");
  for (int mm : fig3_m_list) {
    if (mm < 1) throw ConfigError("fig3 m list entries must be >= 1");
  }
  if (oracle_n_sites < 24) throw ConfigError("oracle lattice too small");
  if (oracle_eta < 0.0) throw ConfigError("oracle_eta must be >= 0");
  if (tau <= 0.0) throw ConfigError("tau must be > 0");
  if (slater_steps < 1) throw ConfigError("slater_steps must be >= 1");
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  const std::string v = trim(value);
  if (key == "m") cfg.m = parse_int(key, v);
  else if (key == "eta") cfg.eta = parse_double(key, v);
  else if (key == "k_abs_tol") cfg.k_abs_tol = parse_double(key, v);
  else if (key == "leg_abs_tol") cfg.leg_abs_tol = parse_double(key, v);
  else if (key == "leg_rel_tol") cfg.leg_rel_tol = parse_double(key, v);
  else if (key == "cycle") cfg.cycle_kind = v;
  else if (key == "u_min") cfg.u_min = parse_double(key, v);
  else if (key == "u_max") cfg.u_max = parse_double(key, v);
  else if (key == "vertices") cfg.vertices = parse_vertices(key, v);
  else if (key == "e_max") cfg.e_max = parse_double(key, v);
  else if (key == "beta") cfg.beta = parse_double(key, v);
  else if (key == "mode") {
    if (v == "zero_T") cfg.mode = DistributionMode::zero_T;
    else if (v == "finite_T") cfg.mode = DistributionMode::finite_T;
    else throw ConfigError("mode must be 'zero_T' or 'finite_T'");
  } else if (key == "sign_pairing") {
    if (v == "printed") cfg.pairing = SignPairing::printed;
    else if (v == "alternate") cfg.pairing = SignPairing::alternate;
    else throw ConfigError("sign_pairing must be 'printed' or 'alternate'");
  } else if (key == "evanescent_branch") {
    if (v == "keep") cfg.evanescent = EvanescentBranch::keep;
    else if (v == "drop") cfg.evanescent = EvanescentBranch::drop;
    else throw ConfigError("evanescent_branch must be 'keep' or 'drop'");
  }
  else if (key == "green_e_lo") cfg.green_e_lo = parse_double(key, v);
  else if (key == "green_e_hi") cfg.green_e_hi = parse_double(key, v);
  else if (key == "green_n") cfg.green_n = parse_int(key, v);
  else if (key == "fig2b_u_lo") cfg.fig2b_u_lo = parse_double(key, v);
  else if (key == "fig2b_u_hi") cfg.fig2b_u_hi = parse_double(key, v);
  else if (key == "fig2b_n") cfg.fig2b_n = parse_int(key, v);
  else if (key == "fig3_e_lo") cfg.fig3_e_lo = parse_double(key, v);
  else if (key == "fig3_e_hi") cfg.fig3_e_hi = parse_double(key, v);
  else if (key == "fig3_step") cfg.fig3_step = parse_double(key, v);
  else if (key == "fig3_m_list") cfg.fig3_m_list = parse_int_list(key, v);
  else if (key == "oracle_n_sites") cfg.oracle_n_sites = parse_int(key, v);
  else if (key == "oracle_eta") cfg.oracle_eta = parse_double(key, v);
  else if (key == "fermi_energy") cfg.fermi_energy = parse_double(key, v);
  else if (key == "tau") cfg.tau = parse_double(key, v);
  else if (key == "slater_steps") cfg.slater_steps = parse_int(key, v);
  else if (key == "parallel") cfg.parallel = parse_bool(key, v);
  else if (key == "out") cfg.out_path = v;
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    }
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string defaults_table() {
  return
      "m = 1                  # turnstile half-separation: interactions at -m, +m\n"
      "eta = 1e-6             # retarded broadening of the pair kernel\n"
      "k_abs_tol = 1e-9       # momentum-integral absolute tolerance\n"
      "leg_abs_tol = 1e-12    # cycle-leg integral absolute tolerance\n"
      "leg_rel_tol = 1e-8     # cycle-leg integral relative tolerance\n"
      "cycle = square         # 'square' or 'vertices'\n"
      "u_min = 0.5            # square cycle lower interaction strength\n"
      "u_max = 4.0            # square cycle upper interaction strength\n"
      "vertices =             # e.g. (0.5,0.5);(4,0.5);(4,4);(0.5,4) when cycle = vertices\n"
      "e_max = 0.0            # maximum available pair energy\n"
      "beta = 1000.0          # inverse temperature (finite_T mode)\n"
      "mode = zero_T          # 'zero_T' or 'finite_T'\n"
      "sign_pairing = printed # 'printed' or 'alternate' cross-term pairing\n"
      "evanescent_branch = keep  # 'keep' or 'drop' evanescent momenta\n"
      "green_e_lo = -5.0      # green table: lowest energy\n"
      "green_e_hi = 5.0       # green table: highest energy\n"
      "green_n = 20           # green table: number of energies\n"
      "fig2b_u_lo = 0.0       # footprint sweep: lowest strength\n"
      "fig2b_u_hi = 5.0       # footprint sweep: highest strength\n"
      "fig2b_n = 21           # footprint sweep: grid points per axis\n"
      "fig3_e_lo = -4.0       # energy sweep: lowest e_max\n"
      "fig3_e_hi = 4.0        # energy sweep: highest e_max\n"
      "fig3_step = 0.25       # energy sweep: grid step\n"
      "fig3_m_list = 1,2      # energy sweep: separations\n"
      "oracle_n_sites = 400   # finite-lattice oracle size\n"
      "oracle_eta = 0         # 0 = max(1e-3, 20/N^2)\n"
      "fermi_energy = 0.0     # one-body Fermi level\n"
      "tau = 5000.0           # one-body cycle period\n"
      "slater_steps = 10000   # implicit midpoint steps per period\n"
      "parallel = true        # OpenMP sweeps and orbital evolutions\n"
      "out =                  # output path; empty = stdout\n";
}

}  // namespace turnstile
