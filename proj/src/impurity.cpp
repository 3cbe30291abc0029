#include "turnstile/impurity.hpp"

#include <cmath>
#include <sstream>

namespace turnstile {

cx t_matrix(double u, cx g0) {
  if (u == 0.0) return {0.0, 0.0};
  return u / (1.0 - u * g0);
}

TMatrixPair t_matrices(const ImpurityState& u, cx g0) {
  return {t_matrix(u.u_minus, g0), t_matrix(u.u_plus, g0)};
}

namespace {

// One summand of the kernel. u_out owns the |1/(1 - u_out g0)|^2 prefactor
// (the regular form of |T_out|^2 / u_out^2); the other impurity enters via
// its full T-matrix in the bracket. cross_sign carries the printed +- in
// front of the cross term; g_branch is the forced-branch element paired with
// this summand.
double kernel_summand(double u_out, cx t_in, const GreenSet& g, cx g_branch,
                      double cross_sign) {
  const cx r_out = 1.0 / (1.0 - u_out * g.g0);
  const double bracket =
      -g.g0.imag() * (1.0 + std::norm(t_in * g.gd)) +
      cross_sign * 2.0 * std::imag(t_in * g.gd * g_branch);
  const cx t_out = u_out * r_out;
  const double denom = std::norm(1.0 - t_in * t_out * g.gd * g.gd);
  if (denom <= 1e-30) {
    std::ostringstream msg;
    msg << "pump_kernel: multiple-scattering pole, |1 - T T G^2|^2 = " << denom
        << " at u_out=" << u_out;
    throw PoleError(msg.str());
  }
  return std::norm(r_out) * bracket / denom;
}

}  // namespace

KernelPair pump_kernel(const ImpurityState& u, const GreenSet& g,
                       SignPairing pairing) {
  const TMatrixPair t = t_matrices(u, g.g0);
  const cx bp = pairing == SignPairing::printed ? g.gp : g.gm;
  const cx bm = pairing == SignPairing::printed ? g.gm : g.gp;
  KernelPair k;
  k.k_plus = kernel_summand(u.u_plus, t.t_minus, g, bp, +1.0);
  k.k_minus = kernel_summand(u.u_minus, t.t_plus, g, bm, -1.0);
  return k;
}

}  // namespace turnstile
