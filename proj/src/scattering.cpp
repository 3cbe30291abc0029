#include "turnstile/scattering.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "turnstile/lattice_green.hpp"

namespace turnstile {

namespace {

void check_in_band(double energy) {
  if (std::abs(energy) >= 2.0 - 1e-12) {
    throw BandEdgeError(
        "one-body energy outside the open band (-2, 2); no propagating state");
  }
}

}  // namespace

ScatteringState scattering_state(double v_minus, double v_plus, int m,
                                 double energy) {
  if (m < 1) throw ConfigError("turnstile half-separation m must be >= 1");
  check_in_band(energy);
  const double q = std::acos(-energy / 2.0);  // E = -2 cos q, q in (0, pi)
  const cx iq(0.0, q);

  ScatteringState st;
  st.w = m + 2;
  const int w = st.w;
  st.psi.assign(static_cast<std::size_t>(2 * w + 1), cx(0.0, 0.0));
  auto ref = [&](int n) -> cx& { return st.psi[static_cast<std::size_t>(n + w)]; };
  auto vsite = [&](int n) -> double {
    if (n == -m) return v_minus;
    if (n == m) return v_plus;
    return 0.0;
  };

  // Unit transmitted wave on the right (valid for n >= m), then recurse the
  // Schrodinger difference equation leftward:
  //   psi(n-1) = (V_n - E) psi(n) - psi(n+1).
  ref(w) = std::exp(iq * static_cast<double>(w));
  ref(w - 1) = std::exp(iq * static_cast<double>(w - 1));
  for (int n = w - 1; n > -w; --n) {
    ref(n - 1) = (vsite(n) - energy) * ref(n) - ref(n + 1);
  }

  // Decompose the left asymptote psi(n) = a e^{iqn} + b e^{-iqn} (n <= -m)
  // on the pair of free sites (-m, -m-1), then rescale so the incident
  // amplitude is 1.
  const int n0 = -m;
  const int n1 = -m - 1;
  const cx det = 2.0 * cx(0.0, std::sin(q));
  const cx e0 = std::exp(iq * static_cast<double>(n0));
  const cx e1 = std::exp(iq * static_cast<double>(n1));
  const cx a = (ref(n0) * std::exp(-iq * static_cast<double>(n1)) -
                ref(n1) * std::exp(-iq * static_cast<double>(n0))) /
               det;
  const cx b = (e0 * ref(n1) - e1 * ref(n0)) / det;
  st.r = b / a;
  st.t = 1.0 / a;
  for (auto& v : st.psi) v /= a;
  return st;
}

SMatrix smatrix(double v_minus, double v_plus, int m, double energy) {
  // Left incidence fills column 0; right incidence is the spatial mirror,
  // i.e. the turnstile with its two potentials swapped.
  const ScatteringState left = scattering_state(v_minus, v_plus, m, energy);
  const ScatteringState right = scattering_state(v_plus, v_minus, m, energy);
  SMatrix s;
  s[0][0] = left.r;   // r
  s[1][0] = left.t;   // t
  s[0][1] = right.t;  // t'
  s[1][1] = right.r;  // r'
  return s;
}

double group_velocity(double energy) {
  if (std::abs(std::abs(energy) - 2.0) < 1e-3) {
    throw BandEdgeError(
        "Fermi level within 1e-3 of a band edge |E| = 2; group velocity "
        "normalization breaks down");
  }
  if (std::abs(energy) > 2.0) {
    throw BandEdgeError("Fermi level outside the band; no propagating state");
  }
  return std::sqrt(4.0 - energy * energy);
}

double single_particle_pumped_charge(const PumpCycle& cycle, int m,
                                     double fermi_energy,
                                     const OneBodyPumpOptions& opt) {
  if (!cycle.closed()) {
    throw ConfigError("pump cycle must be closed (first vertex == last)");
  }
  const double v = group_velocity(fermi_energy);

  double total = 0.0;
  for (std::size_t leg = 0; leg + 1 < cycle.vertices.size(); ++leg) {
    std::array<double, 2> from = cycle.vertices[leg];
    std::array<double, 2> to = cycle.vertices[leg + 1];
    if (from == to) continue;
    // Canonical orientation: integrate each leg from its lexicographically
    // smaller endpoint so a reversed cycle reproduces the same quadrature
    // samples with a flipped sign, bit for bit.
    const bool flip = to < from;
    if (flip) std::swap(from, to);
    const double dvm = to[0] - from[0];
    const double dvp = to[1] - from[1];

    auto integrand = [&](double s) -> cx {
      const double vm = from[0] + s * dvm;
      const double vp = from[1] + s * dvp;
      const ScatteringState st = scattering_state(vm, vp, m, fermi_energy);
      const double wm = std::norm(st.at(-m));
      const double wp = std::norm(st.at(+m));
      return cx((wm * dvm + wp * dvp) / v, 0.0);
    };
    const QuadResult q = integrate_gk(integrand, 0.0, 1.0, opt.leg);
    const double sign = flip ? 1.0 : -1.0;
    total += sign * q.value.real() / (2.0 * kPi);
  }
  return total;
}

double brouwer_pumped_charge(const PumpCycle& cycle, int m,
                             double fermi_energy, const BrouwerOptions& opt) {
  if (!cycle.closed()) {
    throw ConfigError("pump cycle must be closed (first vertex == last)");
  }
  group_velocity(fermi_energy);  // band-edge guard
  const double h = opt.fd_step;

  // Curvature density at one point of the (v-, v+) plane: transmitted-row
  // sum of Im{ d-S conj(d+S) } from centered parametric differences.
  auto curvature = [&](double vm, double vp) -> double {
    const SMatrix sm_p = smatrix(vm + h, vp, m, fermi_energy);
    const SMatrix sm_m = smatrix(vm - h, vp, m, fermi_energy);
    const SMatrix sp_p = smatrix(vm, vp + h, m, fermi_energy);
    const SMatrix sp_m = smatrix(vm, vp - h, m, fermi_energy);
    double acc = 0.0;
    for (int beta = 0; beta < 2; ++beta) {
      const cx dminus = (sm_p[1][beta] - sm_m[1][beta]) / (2.0 * h);
      const cx dplus = (sp_p[1][beta] - sp_m[1][beta]) / (2.0 * h);
      acc += std::imag(dminus * std::conj(dplus));
    }
    return acc;
  };

  // Fan-triangulate the polygon and integrate the curvature with a product
  // Gauss rule per triangle via the collapsed-square map
  //   x(u, s) = P0 + u (P1 - P0) + u s (P2 - P1),  Jacobian = 2 A u,
  // where A is the signed triangle area carrying the cycle orientation.
  const auto rule = gauss_legendre_unit(opt.gauss_order);
  const std::size_t nvert = cycle.vertices.size() - 1;  // last repeats first
  double total = 0.0;
  for (std::size_t i = 1; i + 1 <= nvert - 1; ++i) {
    const auto& p0 = cycle.vertices[0];
    const auto& p1 = cycle.vertices[i];
    const auto& p2 = cycle.vertices[i + 1];
    const double ax = p1[0] - p0[0], ay = p1[1] - p0[1];
    const double bx = p2[0] - p0[0], by = p2[1] - p0[1];
    const double two_area = ax * by - ay * bx;  // signed
    if (two_area == 0.0) continue;
    double tri = 0.0;
    for (std::size_t iu = 0; iu < rule.nodes.size(); ++iu) {
      const double u = rule.nodes[iu];
      double inner = 0.0;
      for (std::size_t is = 0; is < rule.nodes.size(); ++is) {
        const double s = rule.nodes[is];
        const double x = p0[0] + u * ((p1[0] - p0[0]) + s * (p2[0] - p1[0]));
        const double y = p0[1] + u * ((p1[1] - p0[1]) + s * (p2[1] - p1[1]));
        inner += rule.weights[is] * curvature(x, y);
      }
      tri += rule.weights[iu] * u * inner;
    }
    total += two_area * tri;
  }
  return total / kPi;
}

}  // namespace turnstile
