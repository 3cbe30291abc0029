#include "turnstile/pump.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace turnstile {

namespace {

struct EnergyNode {
  double e;
  double weight;  // panel GL weight times F(e)
};

double clamp_exp(double x) { return std::max(-600.0, std::min(600.0, x)); }

// Panel edges for the finite-T energy integral: band landmarks plus a
// refinement window around the Fermi edge at e_max.
std::vector<double> finite_t_panels(const PairDistribution& dist) {
  const double lower = -4.2;
  const double upper = std::min(4.2, dist.e_max + 40.0 / dist.beta);
  std::set<double> edges;
  if (upper <= lower) return {};
  for (double e : {-4.2, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 4.2})
    if (e >= lower && e <= upper) edges.insert(e);
  for (double w : {50.0, 5.0}) {
    for (double s : {-1.0, 1.0}) {
      const double e = dist.e_max + s * w / dist.beta;
      if (e > lower && e < upper) edges.insert(e);
    }
  }
  edges.insert(lower);
  edges.insert(upper);
  return {edges.begin(), edges.end()};
}

std::vector<EnergyNode> finite_t_nodes(const PairDistribution& dist,
                                       const PumpOptions& opt) {
  const auto edges = finite_t_panels(dist);
  const GaussRule& gl = gauss_legendre(opt.panel_order);
  std::vector<EnergyNode> nodes;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    const double mid = 0.5 * (edges[i + 1] + edges[i]);
    if (half <= 0.0) continue;
    for (int j = 0; j < opt.panel_order; ++j) {
      const double e = mid + half * gl.nodes[static_cast<std::size_t>(j)];
      nodes.push_back(
          {e, half * gl.weights[static_cast<std::size_t>(j)] * dist.fermi(e)});
    }
  }
  return nodes;
}

// W_-(u), W_+(u): the energy-integrated kernel multiplying dU_- and dU_+.
class WEvaluator {
 public:
  WEvaluator(const LatticeModel& model, const PairDistribution& dist,
             const PumpOptions& opt)
      : dist_(dist), opt_(opt), model_(model) {
    if (dist.mode == DistributionMode::finite_T && !(dist.beta > 0.0))
      throw ConfigError("finite_T mode requires beta > 0");
    if (dist.mode == DistributionMode::zero_T) {
      boundary_ = set_at(dist.e_max);
    } else {
      nodes_ = finite_t_nodes(dist, opt);
      const double h = opt.fd_step;
      stencil_sets_.reserve(nodes_.size() * 4);
      for (const auto& n : nodes_)
        for (double d : {-h, -0.5 * h, 0.5 * h, h})
          stencil_sets_.push_back(set_at(n.e + d));
    }
  }

  KernelPair eval(const ImpurityState& u) const {
    if (dist_.mode == DistributionMode::zero_T)
      return pump_kernel(u, boundary_, opt_.pairing);
    const double h = opt_.fd_step;
    KernelPair w;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const KernelPair kmh = pump_kernel(u, stencil_sets_[4 * i + 0], opt_.pairing);
      const KernelPair kmh2 = pump_kernel(u, stencil_sets_[4 * i + 1], opt_.pairing);
      const KernelPair kph2 = pump_kernel(u, stencil_sets_[4 * i + 2], opt_.pairing);
      const KernelPair kph = pump_kernel(u, stencil_sets_[4 * i + 3], opt_.pairing);
      // Richardson-refined central difference: (4 D_{h/2} - D_h) / 3 with
      // D_h = (K(e+h) - K(e-h)) / (2h)
      const double dm = (4.0 * (kph2.k_minus - kmh2.k_minus) / h -
                         (kph.k_minus - kmh.k_minus) / (2.0 * h)) / 3.0;
      const double dp = (4.0 * (kph2.k_plus - kmh2.k_plus) / h -
                         (kph.k_plus - kmh.k_plus) / (2.0 * h)) / 3.0;
      w.k_minus += nodes_[i].weight * dm;
      w.k_plus += nodes_[i].weight * dp;
    }
    return w;
  }

 private:
  GreenSet set_at(double e_re) const {
    if (opt_.cache) return opt_.cache->at(e_re);
    ComplexEnergy E{e_re, opt_.eta};
    return green_set(model_.m, E, opt_.evanescent, opt_.green);
  }

  PairDistribution dist_;
  PumpOptions opt_;
  LatticeModel model_;
  GreenSet boundary_{};                  // zero_T
  std::vector<EnergyNode> nodes_;        // finite_T
  std::vector<GreenSet> stencil_sets_;   // 4 per node: e-h, e-h/2, e+h/2, e+h
};

bool lex_less(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
}

}  // namespace

PumpCycle PumpCycle::square(double u_min, double u_max) {
  PumpCycle c;
  c.vertices = {{u_min, u_min},
                {u_max, u_min},
                {u_max, u_max},
                {u_min, u_max},
                {u_min, u_min}};
  return c;
}

bool PumpCycle::closed() const {
  return vertices.size() >= 2 && vertices.front() == vertices.back();
}

PumpCycle PumpCycle::reversed() const {
  PumpCycle c = *this;
  std::reverse(c.vertices.begin(), c.vertices.end());
  return c;
}

double PairDistribution::fermi(double e) const {
  return 1.0 / (std::exp(clamp_exp(beta * (e - e_max))) + 1.0);
}

void GreenCache::warm(const std::vector<double>& energies) {
  for (double e : energies) {
    if (by_energy.count(e)) continue;
    ComplexEnergy E{e, eta};
    by_energy.emplace(e, green_set(m, E, mode, opt));
  }
}

GreenSet GreenCache::at(double e_re) const {
  auto it = by_energy.find(e_re);
  if (it != by_energy.end()) return it->second;
  ComplexEnergy E{e_re, eta};
  return green_set(m, E, mode, opt);
}

std::vector<double> finite_t_energy_nodes(const PairDistribution& dist,
                                          const PumpOptions& opt) {
  std::vector<double> out;
  for (const auto& n : finite_t_nodes(dist, opt))
    for (double d : {-opt.fd_step, -0.5 * opt.fd_step, 0.5 * opt.fd_step,
                     opt.fd_step})
      out.push_back(n.e + d);
  return out;
}

PumpResult pumped_singlets(const PumpCycle& cycle, const LatticeModel& model,
                           const PairDistribution& dist,
                           const PumpOptions& opt) {
  if (!cycle.closed())
    throw ConfigError("pumped_singlets: cycle is not closed");
  const WEvaluator W(model, dist, opt);
  PumpResult res;
  for (std::size_t i = 0; i + 1 < cycle.vertices.size(); ++i) {
    const auto& a = cycle.vertices[i];
    const auto& b = cycle.vertices[i + 1];
    LegDiagnostic diag;
    diag.from = a;
    diag.to = b;
    if (a != b) {
      // Canonical orientation: integrate from the lexicographically smaller
      // endpoint so a reversed cycle reuses identical quadrature nodes and
      // cancellation of out-and-back legs is exact in floating point.
      const bool flip = lex_less(b, a);
      const auto& lo = flip ? b : a;
      const auto& hi = flip ? a : b;
      const double d0 = hi[0] - lo[0], d1 = hi[1] - lo[1];
      const auto f = [&](double t) -> cx {
        const ImpurityState u{lo[0] + t * d0, lo[1] + t * d1};
        const KernelPair k = W.eval(u);
        return {k.k_minus * d0 + k.k_plus * d1, 0.0};
      };
      const QuadResult q = integrate_gk(f, 0.0, 1.0, opt.leg);
      const double sign = flip ? 1.0 : -1.0;  // includes the -1/(2 pi) sign
      diag.contribution = sign * q.value.real() / (2.0 * kPi);
      diag.quad_error = q.error / (2.0 * kPi);
      diag.evals = q.evals;
    }
    res.q_singlets += diag.contribution;
    res.error_estimate += diag.quad_error;
    res.diagnostics.push_back(diag);
  }
  return res;
}

LegSchedule LegSchedule::uniform(std::array<double, 2> a,
                                 std::array<double, 2> b) {
  return {a, b, [](double s) { return s; }, [](double) { return 1.0; }};
}

LegSchedule LegSchedule::quadratic(std::array<double, 2> a,
                                   std::array<double, 2> b) {
  return {a, b, [](double s) { return s * s; }, [](double s) { return 2.0 * s; }};
}

LegSchedule LegSchedule::frozen(std::array<double, 2> a) {
  return {a, a, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

CycleSchedule uniform_schedule(const PumpCycle& cycle, double tau) {
  CycleSchedule s;
  s.tau = tau;
  for (std::size_t i = 0; i + 1 < cycle.vertices.size(); ++i)
    s.legs.push_back(LegSchedule::uniform(cycle.vertices[i], cycle.vertices[i + 1]));
  return s;
}

CycleSchedule quadratic_schedule(const PumpCycle& cycle, double tau) {
  CycleSchedule s;
  s.tau = tau;
  for (std::size_t i = 0; i + 1 < cycle.vertices.size(); ++i)
    s.legs.push_back(LegSchedule::quadratic(cycle.vertices[i], cycle.vertices[i + 1]));
  return s;
}

CycleSchedule frozen_schedule(std::array<double, 2> at, int legs, double tau) {
  CycleSchedule s;
  s.tau = tau;
  for (int i = 0; i < legs; ++i) s.legs.push_back(LegSchedule::frozen(at));
  return s;
}

PumpResult pumped_singlets_timeparam(const CycleSchedule& sched,
                                     const LatticeModel& model,
                                     const PairDistribution& dist,
                                     const PumpOptions& opt) {
  for (std::size_t i = 0; i + 1 < sched.legs.size(); ++i)
    if (sched.legs[i].to != sched.legs[i + 1].from)
      throw ConfigError("pumped_singlets_timeparam: legs do not connect");
  if (!sched.legs.empty() && sched.legs.back().to != sched.legs.front().from)
    throw ConfigError("pumped_singlets_timeparam: schedule is not closed");
  const WEvaluator W(model, dist, opt);
  PumpResult res;
  for (const auto& leg : sched.legs) {
    LegDiagnostic diag;
    diag.from = leg.from;
    diag.to = leg.to;
    const double d0 = leg.to[0] - leg.from[0];
    const double d1 = leg.to[1] - leg.from[1];
    if (d0 != 0.0 || d1 != 0.0) {
      const auto f = [&](double s) -> cx {
        const double g = leg.shape(s);
        const double gd = leg.shape_dot(s);
        const ImpurityState u{leg.from[0] + g * d0, leg.from[1] + g * d1};
        const KernelPair k = W.eval(u);
        return {(k.k_minus * d0 + k.k_plus * d1) * gd, 0.0};
      };
      const QuadResult q = integrate_gk(f, 0.0, 1.0, opt.leg);
      diag.contribution = -q.value.real() / (2.0 * kPi);
      diag.quad_error = q.error / (2.0 * kPi);
      diag.evals = q.evals;
    }
    res.q_singlets += diag.contribution;
    res.error_estimate += diag.quad_error;
    res.diagnostics.push_back(diag);
  }
  return res;
}

AdiabaticityReport adiabaticity_check(double tau, const LatticeModel& model,
                                      const PairDistribution& dist) {
  if (!(tau > 0.0)) throw ConfigError("adiabaticity_check: tau must be > 0");
  AdiabaticityReport rep;
  const double d = 2.0 * model.m + 1.0;  // carrier path across the turnstile
  const double e = dist.e_max;
  double v = 0.0;
  if (e >= -4.0 && e <= 4.0) {
    // fastest single-particle partition of pair energy e: one particle at
    // band center when |e| <= 2, else both pushed toward the same edge
    const double e1 = std::abs(e) <= 2.0 ? 0.0 : std::abs(e) - 2.0;
    v = std::sqrt(std::max(0.0, 4.0 - e1 * e1));
  }
  if (v <= 0.0) {
    rep.dwell_time = 0.0;
    rep.ratio = 0.0;
    rep.adiabatic = false;
    rep.message = "no propagating carriers at this energy; adiabaticity undefined";
    return rep;
  }
  rep.dwell_time = d / v;
  rep.ratio = tau / rep.dwell_time;
  rep.adiabatic = rep.ratio >= 100.0;
  std::ostringstream msg;
  if (rep.adiabatic) {
    msg << "adiabatic: yes (tau/dwell = " << rep.ratio << ")";
  } else {
    msg << "warning: tau/dwell = " << rep.ratio
        << " < 100; cycle too fast for the adiabatic approximation";
  }
  rep.message = msg.str();
  return rep;
}

}  // namespace turnstile
