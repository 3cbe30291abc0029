#include "turnstile/sweep.hpp"

#include <cmath>

namespace turnstile {

namespace {

// one warmed read-only store per (m, distribution); shared across all cells
GreenCache warmed_cache(int m, const PairDistribution& dist,
                        const PumpOptions& pump) {
  GreenCache cache;
  cache.m = m;
  cache.eta = pump.eta;
  cache.mode = pump.evanescent;
  cache.opt = pump.green;
  if (dist.mode == DistributionMode::zero_T) {
    cache.warm({dist.e_max});
  } else {
    cache.warm(finite_t_energy_nodes(dist, pump));
  }
  return cache;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

std::vector<FootprintCell> footprint_sweep(const std::vector<double>& u_grid,
                                           const LatticeModel& model,
                                           const PairDistribution& dist,
                                           const SweepOptions& opt) {
  if (u_grid.empty()) throw ConfigError("footprint sweep needs a grid");

  std::vector<FootprintCell> cells;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    for (std::size_t j = i; j < u_grid.size(); ++j) {
      FootprintCell cell;
      cell.u_min = u_grid[i];
      cell.u_max = u_grid[j];
      cells.push_back(cell);
    }
  }

  const GreenCache cache = warmed_cache(model.m, dist, opt.pump);
  PumpOptions pump = opt.pump;
  pump.cache = &cache;

  const long n = static_cast<long>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (long idx = 0; idx < n; ++idx) {
    FootprintCell& cell = cells[static_cast<std::size_t>(idx)];
    if (cell.u_min == cell.u_max) {
      cell.q_singlets = 0.0;  // degenerate point cycle
      continue;
    }
    try {
      const PumpCycle cyc = PumpCycle::square(cell.u_min, cell.u_max);
      cell.q_singlets = pumped_singlets(cyc, model, dist, pump).q_singlets;
    } catch (const std::exception& ex) {
      cell.ok = false;
      cell.q_singlets = std::nan("");
      cell.message = ex.what();
    }
  }
  return cells;
}

std::vector<EnergyCell> energy_sweep(const std::vector<double>& e_grid,
                                     const std::vector<int>& m_list,
                                     const PumpCycle& cycle,
                                     const PairDistribution& dist_template,
                                     const SweepOptions& opt) {
  if (e_grid.empty() || m_list.empty()) {
    throw ConfigError("energy sweep needs energy and separation grids");
  }

  std::vector<EnergyCell> cells;
  for (int m : m_list) {
    for (double e : e_grid) {
      EnergyCell cell;
      cell.e_max = e;
      cell.m = m;
      cells.push_back(cell);
    }
  }

  // one cache per separation, each warmed on the union of cell energies
  std::vector<GreenCache> caches;
  caches.reserve(m_list.size());
  for (std::size_t im = 0; im < m_list.size(); ++im) {
    GreenCache cache;
    cache.m = m_list[im];
    cache.eta = opt.pump.eta;
    cache.mode = opt.pump.evanescent;
    cache.opt = opt.pump.green;
    std::vector<double> energies;
    for (double e : e_grid) {
      PairDistribution dist = dist_template;
      dist.e_max = e;
      if (dist.mode == DistributionMode::zero_T) {
        energies.push_back(e);
      } else {
        const auto nodes = finite_t_energy_nodes(dist, opt.pump);
        energies.insert(energies.end(), nodes.begin(), nodes.end());
      }
    }
    cache.warm(energies);
    caches.push_back(std::move(cache));
  }

  const long n = static_cast<long>(cells.size());
  const std::size_t per_m = e_grid.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
  for (long idx = 0; idx < n; ++idx) {
    EnergyCell& cell = cells[static_cast<std::size_t>(idx)];
    const std::size_t im = static_cast<std::size_t>(idx) / per_m;
    try {
      LatticeModel model;
      model.m = cell.m;
      PairDistribution dist = dist_template;
      dist.e_max = cell.e_max;
      PumpOptions pump = opt.pump;
      pump.cache = &caches[im];
      cell.q_singlets = pumped_singlets(cycle, model, dist, pump).q_singlets;
    } catch (const std::exception& ex) {
      cell.ok = false;
      cell.q_singlets = std::nan("");
      cell.message = ex.what();
    }
  }
  return cells;
}

}  // namespace turnstile
