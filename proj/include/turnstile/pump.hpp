#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "turnstile/impurity.hpp"
#include "turnstile/lattice_green.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// Closed piecewise-linear path in the (U_-, U_+) plane. The square cycle
// runs counterclockwise from (u_min, u_min).
struct PumpCycle {
  std::vector<std::array<double, 2>> vertices;  // first == last when closed

  static PumpCycle square(double u_min, double u_max);
  bool closed() const;
  PumpCycle reversed() const;
};

// Occupation of pair energies: F(E) = 1/(exp(beta (E - e_max)) + 1).
// zero_T evaluates the pump kernel at E = e_max only (the boundary term of
// the F-weighted integral); finite_T integrates F(E) dK/dE across the band.
struct PairDistribution {
  double e_max = 0.0;
  double beta = 1000.0;
  DistributionMode mode = DistributionMode::zero_T;

  double fermi(double e) const;
};

// Read-through store of Green-element sets keyed by energy. Warm it on a
// fixed node set, then share it read-only across threads; lookups that miss
// recompute locally and leave the map untouched.
struct GreenCache {
  int m = 1;
  double eta = 1e-6;
  EvanescentBranch mode = EvanescentBranch::keep;
  GreenOptions opt;
  std::map<double, GreenSet> by_energy;

  void warm(const std::vector<double>& energies);
  GreenSet at(double e_re) const;
};

struct PumpOptions {
  double eta = 1e-6;
  GreenOptions green;            // k-integral control
  QuadOptions leg;               // line-integral control (rel 1e-8 default)
  SignPairing pairing = SignPairing::printed;
  EvanescentBranch evanescent = EvanescentBranch::keep;
  double fd_step = 1e-4;         // dK/dE stencil step (finite_T)
  int panel_order = 20;          // Gauss-Legendre order per energy panel
  const GreenCache* cache = nullptr;  // optional, must match eta/m/mode

  PumpOptions() { leg.abs_tol = 1e-12; leg.rel_tol = 1e-8; }
};

struct LegDiagnostic {
  std::array<double, 2> from{}, to{};
  double contribution = 0.0;    // to Q_S, prefactor included
  double quad_error = 0.0;
  std::size_t evals = 0;
};

struct PumpResult {
  double q_singlets = 0.0;
  double error_estimate = 0.0;
  std::vector<LegDiagnostic> diagnostics;
};

// Pumped singlet pairs per cycle: Q_S = (-1/2pi) sum_legs int (W_- dU_- +
// W_+ dU_+), with W_s = K_s(e_max) (zero_T) or int dE F(E) dK_s/dE
// (finite_T, central differences Richardson-refined once, fixed
// Gauss-Legendre panels so Green sets are shared across the cycle).
PumpResult pumped_singlets(const PumpCycle& cycle, const LatticeModel& model,
                           const PairDistribution& dist,
                           const PumpOptions& opt = {});

// Explicit time parameterization of one leg: shape maps [0,1] onto [0,1]
// monotonically with shape(0)=0, shape(1)=1; shape_dot is its derivative.
struct LegSchedule {
  std::array<double, 2> from{}, to{};
  std::function<double(double)> shape;
  std::function<double(double)> shape_dot;

  static LegSchedule uniform(std::array<double, 2> a, std::array<double, 2> b);
  static LegSchedule quadratic(std::array<double, 2> a, std::array<double, 2> b);
  static LegSchedule frozen(std::array<double, 2> a);
};

struct CycleSchedule {
  std::vector<LegSchedule> legs;
  double tau = 1.0;  // period; Q_S is tau-independent, kept for reporting
};

CycleSchedule uniform_schedule(const PumpCycle& cycle, double tau = 1.0);
CycleSchedule quadratic_schedule(const PumpCycle& cycle, double tau = 1.0);
CycleSchedule frozen_schedule(std::array<double, 2> at, int legs, double tau = 1.0);

// Same quantity evaluated through the int dt form, U' dt = dU made explicit.
PumpResult pumped_singlets_timeparam(const CycleSchedule& sched,
                                     const LatticeModel& model,
                                     const PairDistribution& dist,
                                     const PumpOptions& opt = {});

// Energy nodes the finite-T mode will sample (panel Gauss-Legendre points
// plus the four-point dK/dE stencil around each); for cache warming.
std::vector<double> finite_t_energy_nodes(const PairDistribution& dist,
                                          const PumpOptions& opt = {});

struct AdiabaticityReport {
  double dwell_time = 0.0;   // d / v, d = 2m + 1 sites
  double ratio = 0.0;        // tau / dwell
  bool adiabatic = false;    // ratio >= 100
  std::string message;
};

AdiabaticityReport adiabaticity_check(double tau, const LatticeModel& model,
                                      const PairDistribution& dist);

}  // namespace turnstile
