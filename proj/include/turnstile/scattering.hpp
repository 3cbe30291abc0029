#pragma once

#include <array>
#include <vector>

#include "turnstile/pump.hpp"
#include "turnstile/quadrature.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// One-body scattering off the two site potentials (v_minus at -m, v_plus at
// +m) on the infinite chain.  Used as an independent cross-check of the pair
// pump: a single electron sees the same turnstile geometry, so three
// unrelated computations of its pumped charge (scattering-state line
// integral, S-matrix curvature area, and real-time Slater evolution) must
// agree.

// Scattering state at energy E = -2 cos q for a unit wave incident from the
// left.  psi stores amplitudes on sites [-w, w]; outside that window the
// state is the plane-wave asymptote encoded by (r, t).
struct ScatteringState {
  int w = 0;
  std::vector<cx> psi;
  cx r;  // reflection amplitude, left lead
  cx t;  // transmission amplitude, right lead

  cx at(int n) const { return psi[static_cast<std::size_t>(n + w)]; }
};

// In-band kinematics: |energy| < 2 strictly; the solver has no meaning at or
// beyond the band edges.
ScatteringState scattering_state(double v_minus, double v_plus, int m,
                                 double energy);

// S-matrix in lead basis {left, right}: S = [[r, t'], [t, r']].  Row index is
// the outgoing lead, column the incoming one.
using SMatrix = std::array<std::array<cx, 2>, 2>;
SMatrix smatrix(double v_minus, double v_plus, int m, double energy);

// Group velocity v(E) = sqrt(4 - E^2) of the single-particle band.  Throws
// BandEdgeError when the energy sits within 1e-3 of a band edge |E| = 2,
// where the pumping formulas lose their 1/v normalization.
double group_velocity(double energy);

struct OneBodyPumpOptions {
  QuadOptions leg;  // per-leg line integral control
  OneBodyPumpOptions() {
    leg.abs_tol = 1e-12;
    leg.rel_tol = 1e-8;
    leg.max_evals = 200000;
  }
};

// Charge pumped through the one-body turnstile per cycle of the potentials
// (v_minus, v_plus), for a single electron at the Fermi energy:
//   Q = -(1/2 pi) oint (1/v) [ |psi(-m)|^2 dv_minus + |psi(+m)|^2 dv_plus ].
// Legs are traversed in a canonical orientation with signed contributions so
// a reversed cycle negates bitwise.
double single_particle_pumped_charge(const PumpCycle& cycle, int m,
                                     double fermi_energy,
                                     const OneBodyPumpOptions& opt = {});

// Brouwer curvature area form of the same charge, from parametric
// derivatives of the S-matrix integrated over the oriented interior of the
// cycle polygon:
//   Q = (1/pi) integral dv- dv+ sum_beta Im{ d S_{r,beta}/dv-  conj(d S_{r,beta}/dv+) }.
// The polygon is fan-triangulated and each triangle integrated with a
// product Gauss rule; signed triangle areas carry the cycle orientation, so
// a reversed cycle negates exactly.  fd_step is the centered difference used
// for the parametric derivatives.
struct BrouwerOptions {
  int gauss_order = 12;
  double fd_step = 1e-5;
};
double brouwer_pumped_charge(const PumpCycle& cycle, int m,
                             double fermi_energy,
                             const BrouwerOptions& opt = {});

}  // namespace turnstile
