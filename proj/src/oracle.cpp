#include "turnstile/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace turnstile {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_pair_feasible(const FiniteLattice& lat, int m) {
  if (lat.n_sites < 4 * m + 20) {
    throw ConfigError(
        "finite lattice too small: need n_sites >= 4m + 20 so the turnstile "
        "sits far from the boundaries");
  }
  if (lat.boundary != FiniteLattice::Boundary::open) {
    throw ConfigError("pair-sector oracle supports open boundaries only");
  }
}

void check_oracle_eta(const ComplexEnergy& energy) {
  if (energy.eta < 1e-4) {
    throw ConfigError(
        "finite-lattice resolvent needs eta >= 1e-4 to exceed the level "
        "spacing");
  }
}

}  // namespace

long PairBasis::dim() const {
  const long n = n_sites;
  return sector == Sector::symmetric ? n * (n + 1) / 2 : n * (n - 1) / 2;
}

long PairBasis::index(int n1, int n2) const {
  const long n = n_sites;
  const long a = n1, b = n2;
  if (sector == Sector::symmetric) {
    // row a holds n2 = a..n-1
    return a * n - a * (a - 1) / 2 + (b - a);
  }
  // row a holds n2 = a+1..n-1
  return a * (n - 1) - a * (a - 1) / 2 + (b - a - 1);
}

std::pair<int, int> PairBasis::state(long idx) const {
  // row-major scan; dimensions stay small enough (n_sites) for a linear walk
  const long n = n_sites;
  long row = 0;
  long off = 0;
  while (true) {
    const long len = (sector == Sector::symmetric) ? n - row : n - row - 1;
    if (idx < off + len) break;
    off += len;
    ++row;
  }
  const long col0 = (sector == Sector::symmetric) ? row : row + 1;
  return {static_cast<int>(row), static_cast<int>(col0 + (idx - off))};
}

Eigen::SparseMatrix<double> pair_hamiltonian(const PairBasis& basis,
                                             double u_minus, double u_plus,
                                             int m) {
  const int n = basis.n_sites;
  const int c = n / 2;
  const int site_minus = c - m;
  const int site_plus = c + m;
  const long dim = basis.dim();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(5 * dim));

  auto valid = [&](int s) { return s >= 0 && s < n; };

  for (long idx = 0; idx < dim; ++idx) {
    const auto [a, b] = basis.state(idx);
    if (basis.sector == Sector::symmetric && a == b) {
      // double occupation: one combined hop per direction, amplitude -sqrt(2)
      for (int d : {-1, +1}) {
        const int t = a + d;
        if (!valid(t)) continue;
        const int p = std::min(t, a);
        const int q = std::max(t, a);
        trips.emplace_back(idx, basis.index(p, q), -kSqrt2);
      }
      if (a == site_minus) trips.emplace_back(idx, idx, u_minus);
      if (a == site_plus) trips.emplace_back(idx, idx, u_plus);
      continue;
    }
    // distinct sites a < b: move either electron by one site
    const int cand[4][2] = {{a - 1, b}, {a + 1, b}, {a, b - 1}, {a, b + 1}};
    for (const auto& mv : cand) {
      const int p = mv[0];
      const int q = mv[1];
      if (!valid(p) || !valid(q)) continue;
      if (p == q) {
        if (basis.sector == Sector::antisymmetric) continue;  // Pauli null
        trips.emplace_back(idx, basis.index(p, p), -kSqrt2);
      } else {
        trips.emplace_back(idx, basis.index(std::min(p, q), std::max(p, q)),
                           -1.0);
      }
    }
  }

  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trips.begin(), trips.end());
  h.makeCompressed();
  return h;
}

PairResolvent::PairResolvent(const FiniteLattice& lat, Sector sector,
                             double u_minus, double u_plus, int m,
                             const ComplexEnergy& energy) {
  check_pair_feasible(lat, std::max(m, 1));
  check_oracle_eta(energy);
  basis_.sector = sector;
  basis_.n_sites = lat.n_sites;
  center_ = lat.n_sites / 2;

  const Eigen::SparseMatrix<double> h =
      pair_hamiltonian(basis_, u_minus, u_plus, m);
  const cx z = energy.z();

  std::vector<Eigen::Triplet<cx>> trips;
  trips.reserve(static_cast<std::size_t>(h.nonZeros()) +
                static_cast<std::size_t>(h.rows()));
  for (int k = 0; k < h.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h, k); it; ++it) {
      trips.emplace_back(it.row(), it.col(), cx(-it.value(), 0.0));
    }
  }
  for (long i = 0; i < h.rows(); ++i) trips.emplace_back(i, i, z);

  Eigen::SparseMatrix<cx> a(h.rows(), h.cols());
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  lu_.compute(a);
  if (lu_.info() != Eigen::Success) {
    throw ConfigError(
        "resolvent factorization failed: energy within working precision of "
        "an eigenvalue; increase eta");
  }
}

cx PairResolvent::element(std::pair<int, int> row, std::pair<int, int> col) {
  auto canon = [&](std::pair<int, int> p) {
    if (p.first > p.second) std::swap(p.first, p.second);
    if (basis_.sector == Sector::antisymmetric && p.first == p.second) {
      throw ConfigError("antisymmetric sector has no doubly-occupied states");
    }
    return basis_.index(p.first, p.second);
  };
  const long r = canon(row);
  const long cidx = canon(col);
  auto it = cols_.find(cidx);
  if (it == cols_.end()) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(basis_.dim());
    e[cidx] = 1.0;
    Eigen::VectorXcd x = lu_.solve(e);
    if (lu_.info() != Eigen::Success) {
      throw ConfigError("resolvent solve failed; increase eta");
    }
    it = cols_.emplace(cidx, std::move(x)).first;
  }
  return it->second[r];
}

double default_oracle_eta(int n_sites) {
  return std::max(1e-3, 20.0 / (static_cast<double>(n_sites) * n_sites));
}

OracleGreens pair_green_oracle(const FiniteLattice& lat, int m,
                               const ComplexEnergy& energy) {
  PairResolvent res(lat, Sector::symmetric, 0.0, 0.0, m, energy);
  const int c = res.center();
  OracleGreens out;
  out.onsite = res.element({c, c}, {c, c});
  out.offdiag = res.element({c + m, c + m}, {c - m, c - m});
  return out;
}

cx extract_t_matrix(const FiniteLattice& lat, double u,
                    const ComplexEnergy& energy) {
  // single impurity at the center: m = 0 puts both interaction slots on one
  // site, so pass the strength once and zero the other
  PairResolvent clean(lat, Sector::symmetric, 0.0, 0.0, 0, energy);
  PairResolvent full(lat, Sector::symmetric, u, 0.0, 0, energy);
  const int c = clean.center();
  const cx g0 = clean.element({c, c}, {c, c});
  const cx g = full.element({c, c}, {c, c});
  return (g - g0) / (g0 * g0);
}

bool triplet_exclusion_check(const FiniteLattice& lat, int m, double u_minus,
                             double u_plus) {
  PairBasis basis;
  basis.sector = Sector::antisymmetric;
  basis.n_sites = lat.n_sites;
  Eigen::SparseMatrix<double> h_off = pair_hamiltonian(basis, 0.0, 0.0, m);
  Eigen::SparseMatrix<double> h_on =
      pair_hamiltonian(basis, u_minus, u_plus, m);
  if (h_off.rows() != h_on.rows() || h_off.nonZeros() != h_on.nonZeros())
    return false;
  const long nnz = h_off.nonZeros();
  for (long i = 0; i < nnz; ++i) {
    if (h_off.valuePtr()[i] != h_on.valuePtr()[i]) return false;
    if (h_off.innerIndexPtr()[i] != h_on.innerIndexPtr()[i]) return false;
  }
  for (int k = 0; k <= h_off.outerSize(); ++k) {
    if (h_off.outerIndexPtr()[k] != h_on.outerIndexPtr()[k]) return false;
  }
  return true;
}

cx single_resolvent_element(int n_sites, const ComplexEnergy& energy,
                            int row_offset, int col_offset) {
  check_oracle_eta(energy);
  const int n = n_sites;
  const int c = n / 2;
  const int row = c + row_offset;
  const int col = c + col_offset;
  if (row < 0 || row >= n || col < 0 || col >= n) {
    throw ConfigError("resolvent element outside the lattice");
  }
  // (z - H) is tridiagonal with constant off-diagonal +1 (hopping -1);
  // Thomas elimination against the unit vector e_col.
  const cx z = energy.z();
  std::vector<cx> diag(static_cast<std::size_t>(n), z);
  std::vector<cx> rhs(static_cast<std::size_t>(n), cx(0.0, 0.0));
  rhs[static_cast<std::size_t>(col)] = 1.0;
  // forward sweep
  for (int i = 1; i < n; ++i) {
    const cx w = 1.0 / diag[static_cast<std::size_t>(i - 1)];
    diag[static_cast<std::size_t>(i)] -= w;
    rhs[static_cast<std::size_t>(i)] -= w * rhs[static_cast<std::size_t>(i - 1)];
  }
  // back substitution
  rhs[static_cast<std::size_t>(n - 1)] /= diag[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i) {
    rhs[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i + 1)]) /
        diag[static_cast<std::size_t>(i)];
  }
  return rhs[static_cast<std::size_t>(row)];
}

namespace {

// Complex tridiagonal LU with constant off-diagonal o, plus the rank-one
// Sherman-Morrison correction that restores the ring's corner couplings.
struct CyclicFactor {
  int n = 0;
  cx off;                      // common off-diagonal of the CN matrix
  std::vector<cx> denom;       // Thomas pivots of the corner-free matrix
  std::vector<cx> zvec;        // T^{-1} u, shared across orbitals
  cx gamma;
  cx vn;                       // trailing component of v
  cx denom_sm;                 // 1 + v . z

  CyclicFactor(const std::vector<cx>& diag, cx o) : n(static_cast<int>(diag.size())), off(o) {
    // A = T + u v^T with u = (gamma, 0, .., o), v = (1, 0, .., o/gamma)
    gamma = -diag[0];
    vn = off / gamma;
    std::vector<cx> d(diag);
    d[0] -= gamma;
    d[static_cast<std::size_t>(n - 1)] -= off * off / gamma;
    denom.assign(d.begin(), d.end());
    for (int i = 1; i < n; ++i) {
      denom[static_cast<std::size_t>(i)] -=
          off * off / denom[static_cast<std::size_t>(i - 1)];
    }
    std::vector<cx> u(static_cast<std::size_t>(n), cx(0.0, 0.0));
    u[0] = gamma;
    u[static_cast<std::size_t>(n - 1)] = off;
    zvec = solve_t(u);
    denom_sm = 1.0 + zvec[0] + vn * zvec[static_cast<std::size_t>(n - 1)];
  }

  // T x = b by the stored pivots (b consumed)
  std::vector<cx> solve_t(std::vector<cx> b) const {
    for (int i = 1; i < n; ++i) {
      b[static_cast<std::size_t>(i)] -=
          off / denom[static_cast<std::size_t>(i - 1)] *
          b[static_cast<std::size_t>(i - 1)];
    }
    b[static_cast<std::size_t>(n - 1)] /= denom[static_cast<std::size_t>(n - 1)];
    for (int i = n - 2; i >= 0; --i) {
      b[static_cast<std::size_t>(i)] =
          (b[static_cast<std::size_t>(i)] -
           off * b[static_cast<std::size_t>(i + 1)]) /
          denom[static_cast<std::size_t>(i)];
    }
    return b;
  }

  // full cyclic solve A x = b
  void solve(std::vector<cx>& b) const {
    std::vector<cx> y = solve_t(std::move(b));
    const cx corr =
        (y[0] + vn * y[static_cast<std::size_t>(n - 1)]) / denom_sm;
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(i)] -= corr * zvec[static_cast<std::size_t>(i)];
    }
    b = std::move(y);
  }
};

}  // namespace

SlaterResult slater_sea_evolution(const FiniteLattice& lat, int m,
                                  const PumpCycle& cycle,
                                  const SlaterOptions& opt) {
  if (lat.boundary != FiniteLattice::Boundary::periodic) {
    throw ConfigError("Slater-sea evolution needs a periodic ring");
  }
  if (lat.n_sites < 4 * m + 20) {
    throw ConfigError(
        "finite lattice too small: need n_sites >= 4m + 20 so the turnstile "
        "sits far from the boundaries");
  }
  if (!cycle.closed()) {
    throw ConfigError("pump cycle must be closed (first vertex == last)");
  }
  if (opt.tau <= 0.0 || opt.n_steps <= 0) {
    throw ConfigError("evolution needs tau > 0 and n_steps > 0");
  }

  const int n = lat.n_sites;
  const int c = n / 2;
  const int site_minus = c - m;
  const int site_plus = c + m;
  const std::size_t nlegs = cycle.vertices.size() - 1;

  // potentials at cycle fraction s in [0, 1], equal time per leg
  auto potentials = [&](double s) -> std::array<double, 2> {
    if (s >= 1.0) return cycle.vertices.back();
    const double x = s * static_cast<double>(nlegs);
    const std::size_t leg = std::min(static_cast<std::size_t>(x), nlegs - 1);
    const double f = x - static_cast<double>(leg);
    const auto& a = cycle.vertices[leg];
    const auto& b = cycle.vertices[leg + 1];
    return {a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])};
  };

  // occupied orbitals of the initial Hamiltonian
  const auto v0 = potentials(0.0);
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h0(i, (i + 1) % n) = -1.0;
    h0((i + 1) % n, i) = -1.0;
  }
  h0(site_minus, site_minus) = v0[0];
  h0(site_plus, site_plus) = v0[1];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
  if (es.info() != Eigen::Success) {
    throw ConfigError("initial-orbital eigensolve failed");
  }

  std::vector<std::vector<cx>> orbitals;
  for (int k = 0; k < n; ++k) {
    if (es.eigenvalues()[k] > opt.fermi_energy + 1e-9) break;
    std::vector<cx> psi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) psi[static_cast<std::size_t>(i)] = es.eigenvectors()(i, k);
    orbitals.push_back(std::move(psi));
  }
  const int nocc = static_cast<int>(orbitals.size());

  const double dt = opt.tau / opt.n_steps;
  const cx half_step(0.0, 0.5 * dt);  // i dt / 2
  const cx off = -half_step;          // CN off-diagonal: i dt/2 * (-1)

  // bond current at the bond (0, 1), diametrically opposite the turnstile;
  // 2 Im[conj(psi_0) psi_1] is positive for a rightward plane wave
  auto bond_current = [&](const std::vector<cx>& psi) {
    return 2.0 * std::imag(std::conj(psi[0]) * psi[1]);
  };

  std::vector<double> slots(static_cast<std::size_t>(nocc), 0.0);
  for (int o = 0; o < nocc; ++o) slots[static_cast<std::size_t>(o)] = bond_current(orbitals[static_cast<std::size_t>(o)]);
  double j_prev = 0.0;
  for (double s : slots) j_prev += s;

  double charge = 0.0;
  double max_drift = 0.0;
  bool drift_failed = false;

  for (int step = 0; step < opt.n_steps; ++step) {
    const double s_mid = (static_cast<double>(step) + 0.5) / opt.n_steps;
    const auto vmid = potentials(s_mid);

    std::vector<cx> diag(static_cast<std::size_t>(n), cx(1.0, 0.0));
    diag[static_cast<std::size_t>(site_minus)] += half_step * vmid[0];
    diag[static_cast<std::size_t>(site_plus)] += half_step * vmid[1];
    const CyclicFactor factor(diag, off);

    // (1 - i dt/2 H) psi, then the cyclic solve, per orbital
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int o = 0; o < nocc; ++o) {
      auto& psi = orbitals[static_cast<std::size_t>(o)];
      std::vector<cx> rhs(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const int il = (i + n - 1) % n;
        const int ir = (i + 1) % n;
        double v = 0.0;
        if (i == site_minus) v = vmid[0];
        if (i == site_plus) v = vmid[1];
        const cx hpsi = -psi[static_cast<std::size_t>(il)] -
                        psi[static_cast<std::size_t>(ir)] +
                        v * psi[static_cast<std::size_t>(i)];
        rhs[static_cast<std::size_t>(i)] =
            psi[static_cast<std::size_t>(i)] - half_step * hpsi;
      }
      factor.solve(rhs);
      psi = std::move(rhs);
      slots[static_cast<std::size_t>(o)] = bond_current(psi);
    }

    double j_cur = 0.0;
    for (double sv : slots) j_cur += sv;
    charge += 0.5 * (j_prev + j_cur) * dt;
    j_prev = j_cur;

    if ((step & 63) == 0 || step + 1 == opt.n_steps) {
      for (const auto& psi : orbitals) {
        double nrm = 0.0;
        for (const auto& vv : psi) nrm += std::norm(vv);
        const double drift = std::abs(std::sqrt(nrm) - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > 1e-8) drift_failed = true;
      }
      if (drift_failed) {
        throw NormDriftError(
            "orbital norm drifted beyond 1e-8 during the evolution; reduce "
            "the step size");
      }
    }
  }

  double occ = 0.0;
  for (const auto& psi : orbitals) {
    for (const auto& vv : psi) occ += std::norm(vv);
  }

  SlaterResult out;
  out.charge = charge;
  out.max_norm_drift = max_drift;
  out.occupation_drift = std::abs(occ - static_cast<double>(nocc));
  out.n_orbitals = nocc;
  return out;
}

}  // namespace turnstile
