#pragma once

#include <functional>
#include <vector>

#include "turnstile/types.hpp"

namespace turnstile {

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;    // converged when err < max(abs_tol, rel_tol*|I|)
  std::size_t max_evals = 1000000;
};

struct QuadResult {
  cx value{0.0, 0.0};
  double error = 0.0;      // achieved error estimate
  std::size_t evals = 0;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b]. Splits the interval with the
// largest local error estimate until the global estimate meets tolerance.
// Throws QuadratureError (carrying the achieved estimate) past max_evals.
QuadResult integrate_gk(const std::function<cx(double)>& f, double a, double b,
                        const QuadOptions& opt = {});

// Same, with interior breakpoints: the integral is pre-split there so the
// adaptive scheme never straddles a known near-singular point.
QuadResult integrate_gk_split(const std::function<cx(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              const QuadOptions& opt = {});

// tanh-sinh (double-exponential) rule over [a, b]; converges geometrically
// even with integrable endpoint singularities (the 1/sqrt blowup where
// sinh(lambda) -> 0 at band-edge momenta). Level-doubling with the
// inter-level difference as the error estimate.
QuadResult integrate_tanh_sinh(const std::function<cx(double)>& f, double a,
                               double b, const QuadOptions& opt = {});

// tanh-sinh on each panel [p_i, p_i+1] of a partition of [a, b].
QuadResult integrate_tanh_sinh_split(const std::function<cx(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     const QuadOptions& opt = {});

// Fixed Gauss-Legendre rules, computed once per order by Newton iteration on
// P_n and cached. gauss_legendre is on [-1, 1]; gauss_legendre_unit on [0, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(int n);
const GaussRule& gauss_legendre_unit(int n);

}  // namespace turnstile
