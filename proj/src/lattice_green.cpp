#include "turnstile/lattice_green.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace turnstile {

namespace {

void check_eta(const ComplexEnergy& E, const char* who) {
  if (!(E.eta > 0.0)) {
    std::ostringstream msg;
    msg << who << ": eta must be > 0 (got " << E.eta << ")";
    throw ConfigError(msg.str());
  }
}

// Integrand cos(2mk) exp(-2m lam)/sinh(lam) / (2 pi); the cosine is the even
// part of exp(2imk), which is what survives symmetrization over +-k. The
// oracle resolvent fixes this reading (see tests).
cx pair_integrand(int m, double k, const ComplexEnergy& E) {
  const cx lam = relative_log(k, E);
  return std::cos(2.0 * m * k) * std::exp(-2.0 * m * lam) /
         (std::sinh(lam) * 2.0 * kPi);
}

}  // namespace

cx relative_log(double k, const ComplexEnergy& E) {
  const cx c = E.z() / 2.0 - std::cos(k);
  if (E.eta == 0.0 && std::abs(std::abs(c.real()) - 1.0) < 1e-15) {
    std::ostringstream msg;
    msg << "relative_log: band-edge singularity at k=" << k
        << ", E=" << E.re << " with eta=0 (cosh lambda = +-1)";
    throw BandEdgeError(msg.str());
  }
  return std::acosh(c);  // principal branch: Re >= 0, retarded for eta > 0
}

cx single_green(long n, const ComplexEnergy& E) {
  if (E.eta == 0.0 && std::abs(std::abs(E.re) - 2.0) < 1e-15) {
    std::ostringstream msg;
    msg << "single_green: band edge |E|=2 with eta=0 (E=" << E.re << ")";
    throw BandEdgeError(msg.str());
  }
  const cx lam = std::acosh(E.z() / 2.0);
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const long an = n < 0 ? -n : n;
  return sgn * std::exp(-static_cast<double>(an) * lam) / (2.0 * std::sinh(lam));
}

std::vector<double> band_edge_momenta(double e_re) {
  std::vector<double> ks;
  for (double s : {-1.0, 1.0}) {
    const double c = e_re / 2.0 + s;  // cos k = E/2 -+ 1
    if (c > -1.0 && c < 1.0) ks.push_back(std::acos(c));
  }
  return ks;
}

cx g0_offdiag(int m, const ComplexEnergy& E, const GreenOptions& opt) {
  check_eta(E, "g0_offdiag");
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.max_evals = opt.max_evals;
  const auto r = integrate_tanh_sinh_split(
      [m, &E](double k) { return pair_integrand(m, k, E); }, 0.0, kPi,
      band_edge_momenta(E.re), q);
  return r.value;
}

cx g0_onsite(const ComplexEnergy& E, const GreenOptions& opt) {
  return g0_offdiag(0, E, opt);
}

cx g0_forced_branch(int m, const ComplexEnergy& E, int sign,
                    EvanescentBranch mode, const GreenOptions& opt) {
  check_eta(E, "g0_forced_branch");
  const double si = sign >= 0 ? 1.0 : -1.0;
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.max_evals = opt.max_evals;
  const auto f = [m, si, mode, &E](double k) -> cx {
    const bool propagating = std::abs(E.re / 2.0 - std::cos(k)) < 1.0;
    if (!propagating && mode == EvanescentBranch::drop) return {0.0, 0.0};
    cx lam = relative_log(k, E);
    if (propagating) lam = si * cx(0.0, 1.0) * std::abs(lam);
    return std::cos(2.0 * m * k) * std::exp(-2.0 * m * lam) /
           (std::sinh(lam) * 2.0 * kPi);
  };
  const auto r =
      integrate_tanh_sinh_split(f, 0.0, kPi, band_edge_momenta(E.re), q);
  return r.value;
}

GreenSet green_set(int m, const ComplexEnergy& E, EvanescentBranch mode,
                   const GreenOptions& opt) {
  GreenSet s;
  s.g0 = g0_onsite(E, opt);
  s.gd = g0_offdiag(m, E, opt);
  s.gp = g0_forced_branch(m, E, +1, mode, opt);
  s.gm = g0_forced_branch(m, E, -1, mode, opt);
  return s;
}

}  // namespace turnstile
