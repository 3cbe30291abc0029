#pragma once

#include <vector>

#include "turnstile/quadrature.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// Infinite 1D tight-binding chain, hopping -1 (dispersion -2 cos k, band
// [-2,2]); pair energies live in [-4,4]. All elements are retarded: energies
// are shifted by +i*eta.

struct LatticeModel {
  int m = 1;  // impurity sites at -m and +m
};

struct ComplexEnergy {
  double re = 0.0;
  double eta = 1e-6;
  cx z() const { return {re, eta}; }
};

struct GreenOptions {
  double abs_tol = 1e-9;
  std::size_t max_evals = 1000000;
};

// Root lambda of cosh(lambda) = E/2 - cos k with Re(lambda) >= 0; the +i*eta
// shift selects the retarded branch and keeps lambda continuous in k.
cx relative_log(double k, const ComplexEnergy& E);

// One-particle retarded Green's function of the chain in closed form:
// g(n; E) = (-1)^n exp(-|n| lam) / (2 sinh lam), cosh lam = (E + i eta)/2.
cx single_green(long n, const ComplexEnergy& E);

// Pair Green's-function elements between doubly-occupied sites, from the
// relative-coordinate integral over k in [0, pi]. m = 0 is the on-site
// element; 2m is the site separation of the two impurity pair states.
cx g0_offdiag(int m, const ComplexEnergy& E, const GreenOptions& opt = {});
cx g0_onsite(const ComplexEnergy& E, const GreenOptions& opt = {});

// Same integral with lambda forced to sign * i*|lambda| on propagating
// segments (|E/2 - cos k| < 1). Evanescent segments either keep the
// retarded real branch or are dropped, per `mode`.
cx g0_forced_branch(int m, const ComplexEnergy& E, int sign,
                    EvanescentBranch mode = EvanescentBranch::keep,
                    const GreenOptions& opt = {});

// Momenta in (0, pi) where E/2 - cos k = +-1 (the integrand's near-singular
// points); used as quadrature panel boundaries.
std::vector<double> band_edge_momenta(double e_re);

// The four elements the pumping kernel consumes, at one energy.
struct GreenSet {
  cx g0;  // on-site pair element
  cx gd;  // separation-2m pair element
  cx gp;  // forced branch, sign +
  cx gm;  // forced branch, sign -
};

GreenSet green_set(int m, const ComplexEnergy& E,
                   EvanescentBranch mode = EvanescentBranch::keep,
                   const GreenOptions& opt = {});

}  // namespace turnstile
