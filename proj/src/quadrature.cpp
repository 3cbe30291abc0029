#include "turnstile/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace turnstile {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
  double a, b;
  cx value;
  double error;
};

// One GK 7/15 pass over [a, b]; error from |Kronrod - Gauss|.
Segment gk15(const std::function<cx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cx fc = f(c);
  cx resk = kWgk[7] * fc;
  cx resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const cx f1 = f(c - h * kXgk[j]);
    const cx f2 = f(c + h * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * h;
  s.error = std::abs(resk - resg) * std::abs(h);
  return s;
}

QuadResult adaptive(const std::function<cx(double)>& f,
                    const std::vector<double>& edges, const QuadOptions& opt) {
  std::vector<Segment> segs;
  QuadResult out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) continue;
    segs.push_back(gk15(f, edges[i], edges[i + 1]));
    out.evals += 15;
  }
  if (segs.empty()) return out;
  while (true) {
    cx total{0.0, 0.0};
    double err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    out.value = total;
    out.error = err;
    const double goal = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (err <= goal) return out;
    if (out.evals + 30 > opt.max_evals) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: error estimate " << err
          << " > " << goal << " after " << out.evals << " evaluations";
      throw QuadratureError(msg.str());
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = gk15(f, s.a, mid);
    segs.push_back(gk15(f, mid, s.b));
    out.evals += 30;
  }
}

// Node table for one tanh-sinh level: offsets s = 1 - tanh((pi/2) sinh t)
// from either endpoint and the matching weights, for t = j*h over the
// truncation window. Level 0 holds the stride-1 grid; level L the new
// points (odd multiples of h = 2^-L).
struct DeLevel {
  std::vector<double> offset;  // in (0, 1], measured from an endpoint
  std::vector<double> weight;  // includes the dt factor for this level
  double center_weight = 0.0;  // t = 0 point (level 0 only)
};

constexpr double kPiHalf = 1.57079632679489661923;
constexpr int kDeMaxLevel = 10;
constexpr double kDeTmax = 6.1;  // beyond this the weights underflow

double de_offset(double t) {
  // 1 - tanh(u) = 2 / (exp(2u) + 1), computed without cancellation
  const double u = kPiHalf * std::sinh(t);
  if (u > 350.0) return 0.0;
  return 2.0 / (std::exp(2.0 * u) + 1.0);
}

double de_weight(double t) {
  const double u = kPiHalf * std::sinh(t);
  if (u > 350.0) return 0.0;
  const double ch = std::cosh(u);
  return kPiHalf * std::cosh(t) / (ch * ch);
}

const std::vector<DeLevel>& de_levels() {
  static const std::vector<DeLevel> levels = [] {
    std::vector<DeLevel> ls(kDeMaxLevel + 1);
    ls[0].center_weight = de_weight(0.0);
    double h = 1.0;
    for (int j = 1; j * h <= kDeTmax; ++j) {
      const double off = de_offset(j * h);
      const double w = de_weight(j * h);
      if (off <= 0.0 || w <= 0.0) break;
      ls[0].offset.push_back(off);
      ls[0].weight.push_back(w);
    }
    for (int lev = 1; lev <= kDeMaxLevel; ++lev) {
      h = std::ldexp(1.0, -lev);
      for (int j = 1; j * h <= kDeTmax; j += 2) {
        const double off = de_offset(j * h);
        const double w = de_weight(j * h);
        if (off <= 0.0 || w <= 0.0) break;
        ls[lev].offset.push_back(off);
        ls[lev].weight.push_back(w);
      }
    }
    return ls;
  }();
  return levels;
}

QuadResult tanh_sinh_panel(const std::function<cx(double)>& f, double a,
                           double b, const QuadOptions& opt) {
  const auto& levels = de_levels();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  QuadResult out;
  // running sum of w*f over all evaluated nodes, at the current level's h
  cx acc = levels[0].center_weight * f(mid);
  out.evals = 1;
  for (std::size_t j = 0; j < levels[0].offset.size(); ++j) {
    const double d = half * levels[0].offset[j];
    acc += levels[0].weight[j] * (f(a + d) + f(b - d));
    out.evals += 2;
  }
  double h = 1.0;
  cx prev = acc * (half * h);
  for (int lev = 1; lev <= kDeMaxLevel; ++lev) {
    h = std::ldexp(1.0, -lev);
    for (std::size_t j = 0; j < levels[lev].offset.size(); ++j) {
      const double d = half * levels[lev].offset[j];
      acc += levels[lev].weight[j] * (f(a + d) + f(b - d));
      out.evals += 2;
    }
    const cx cur = acc * (half * h);
    out.value = cur;
    out.error = std::abs(cur - prev);
    prev = cur;
    const double goal = std::max(opt.abs_tol, opt.rel_tol * std::abs(cur));
    if (lev >= 3 && out.error <= goal) return out;
    if (out.evals > opt.max_evals) break;
  }
  std::ostringstream msg;
  msg << "tanh-sinh quadrature did not converge: error estimate " << out.error
      << " after " << out.evals << " evaluations on [" << a << ", " << b << "]";
  throw QuadratureError(msg.str());
}

std::vector<double> make_edges(double a, double b,
                               const std::vector<double>& breakpoints) {
  std::vector<double> edges{a};
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

QuadResult integrate_gk(const std::function<cx(double)>& f, double a, double b,
                        const QuadOptions& opt) {
  return adaptive(f, {a, b}, opt);
}

QuadResult integrate_gk_split(const std::function<cx(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              const QuadOptions& opt) {
  return adaptive(f, make_edges(a, b, breakpoints), opt);
}

QuadResult integrate_tanh_sinh(const std::function<cx(double)>& f, double a,
                               double b, const QuadOptions& opt) {
  return tanh_sinh_panel(f, a, b, opt);
}

QuadResult integrate_tanh_sinh_split(const std::function<cx(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     const QuadOptions& opt) {
  const auto edges = make_edges(a, b, breakpoints);
  QuadResult out;
  QuadOptions per = opt;
  per.abs_tol = opt.abs_tol / static_cast<double>(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) continue;
    const QuadResult r = tanh_sinh_panel(f, edges[i], edges[i + 1], per);
    out.value += r.value;
    out.error += r.error;
    out.evals += r.evals;
  }
  return out;
}

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const std::size_t lo = static_cast<std::size_t>(i);
    const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = -x;
    r.nodes[hi] = x;
    r.weights[lo] = r.weights[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

const GaussRule& gauss_legendre_unit(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const GaussRule& base = gauss_legendre(n);
  GaussRule r = base;
  for (auto& x : r.nodes) x = 0.5 * (x + 1.0);
  for (auto& w : r.weights) w *= 0.5;
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace turnstile
