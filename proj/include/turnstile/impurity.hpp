#pragma once

#include "turnstile/lattice_green.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// Interaction strengths at the two impurity sites -m and +m.
struct ImpurityState {
  double u_minus = 0.0;
  double u_plus = 0.0;
};

struct TMatrixPair {
  cx t_minus{0.0, 0.0};
  cx t_plus{0.0, 0.0};
};

// Single-impurity T-matrix, T = u / (1 - u g0) = 1/(1/u - g0), where g0 is
// the on-site pair resolvent element. Finite for all real u (the resolvent
// convention makes the denominator nonzero for repulsive interactions);
// T -> 0 as u -> 0 and T -> -1/g0 as |u| -> infinity.
cx t_matrix(double u, cx g0);

TMatrixPair t_matrices(const ImpurityState& u, cx g0);

// Energy-resolved pumping kernel K_-(E), K_+(E). K_s multiplies dU_s in the
// pumped-singlet line integral. Assembled in the regular form whose U -> 0
// limit is -Im g0 (the bare pair spectral weight).
struct KernelPair {
  double k_minus = 0.0;
  double k_plus = 0.0;
};

// pairing selects which forced-branch element enters which summand's cross
// term: `printed` puts g+ in the + summand, `alternate` swaps them. The two
// readings exist because the compact +- notation compresses two equations.
KernelPair pump_kernel(const ImpurityState& u, const GreenSet& g,
                       SignPairing pairing = SignPairing::printed);

}  // namespace turnstile
