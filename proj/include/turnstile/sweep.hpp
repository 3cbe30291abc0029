#pragma once

#include <string>
#include <vector>

#include "turnstile/pump.hpp"

namespace turnstile {

// Parameter sweeps over many pump cycles. Cells are independent, so they run
// in parallel; results land in slots keyed by cell index and the output is
// byte-identical to the serial reference regardless of thread count or
// schedule. A failed cell is recorded and the sweep continues.

struct SweepOptions {
  bool parallel = true;  // false: serial reference path
  PumpOptions pump;
};

struct FootprintCell {
  double u_min = 0.0;
  double u_max = 0.0;
  double q_singlets = 0.0;
  bool ok = true;
  std::string message;
};

// Q_S of the square cycle [u_min, u_max]^2 for every grid pair with
// u_min <= u_max. Diagonal cells are degenerate point cycles and are exactly
// zero by construction, no quadrature run.
std::vector<FootprintCell> footprint_sweep(const std::vector<double>& u_grid,
                                           const LatticeModel& model,
                                           const PairDistribution& dist,
                                           const SweepOptions& opt = {});

struct EnergyCell {
  double e_max = 0.0;
  int m = 1;
  double q_singlets = 0.0;
  bool ok = true;
  std::string message;
};

// Q_S(e_max; m) of one fixed cycle for every grid energy and separation.
std::vector<EnergyCell> energy_sweep(const std::vector<double>& e_grid,
                                     const std::vector<int>& m_list,
                                     const PumpCycle& cycle,
                                     const PairDistribution& dist_template,
                                     const SweepOptions& opt = {});

// Evenly spaced closed grid, n points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace turnstile
