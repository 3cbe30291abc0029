#pragma once

#include <array>
#include <string>
#include <vector>

#include "turnstile/pump.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// One flat key=value configuration shared by every subcommand; flags
// override single keys. All physics defaults live here, in one place.
struct RunConfig {
  // model
  int m = 1;
  double eta = 1e-6;           // retarded broadening of the pair kernel
  double k_abs_tol = 1e-9;     // momentum-integral absolute tolerance
  double leg_abs_tol = 1e-12;  // cycle-leg line-integral tolerances
  double leg_rel_tol = 1e-8;

  // cycle: either the square [u_min, u_max]^2 or an explicit vertex list
  std::string cycle_kind = "square";  // "square" | "vertices"
  double u_min = 0.5;
  double u_max = 4.0;
  std::vector<std::array<double, 2>> vertices;

  // pair-energy distribution
  double e_max = 0.0;
  double beta = 1000.0;
  DistributionMode mode = DistributionMode::zero_T;

  // sensitivity switches
  SignPairing pairing = SignPairing::printed;
  EvanescentBranch evanescent = EvanescentBranch::keep;

  // green table grid
  double green_e_lo = -5.0;
  double green_e_hi = 5.0;
  int green_n = 20;

  // footprint sweep grid
  double fig2b_u_lo = 0.0;
  double fig2b_u_hi = 5.0;
  int fig2b_n = 21;

  // energy sweep grid
  double fig3_e_lo = -4.0;
  double fig3_e_hi = 4.0;
  double fig3_step = 0.25;
  std::vector<int> fig3_m_list = {1, 2};

  // finite-lattice oracles
  int oracle_n_sites = 400;
  double oracle_eta = 0.0;  // 0 = max(1e-3, 20 / N^2)

  // one-body turnstile checks
  double fermi_energy = 0.0;
  double tau = 5000.0;
  int slater_steps = 10000;

  bool parallel = true;
  std::string out_path;  // empty = stdout

  PumpCycle cycle() const;
  PumpOptions pump_options() const;
  PairDistribution distribution() const;
  void validate() const;  // throws ConfigError on bad values
};

// key = value lines, '#' comments, unknown keys rejected.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// single key override (same key names as the file)
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// the documented defaults table, one "key = value  # comment" line each
std::string defaults_table();

}  // namespace turnstile
