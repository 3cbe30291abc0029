#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <map>
#include <utility>
#include <vector>

#include "turnstile/lattice_green.hpp"
#include "turnstile/pump.hpp"
#include "turnstile/types.hpp"

namespace turnstile {

// Brute-force validators on a finite chain: exact resolvent inversion for
// the pair Green elements and T-matrices, the structural triplet-exclusion
// check, and real-time Slater-sea evolution of the one-body turnstile.

struct FiniteLattice {
  int n_sites = 400;
  enum class Boundary { open, periodic } boundary = Boundary::open;
};

// Exchange sector of the two-electron spatial wavefunction: the symmetric
// sector carries spin singlets, the antisymmetric one spin triplets.
enum class Sector { symmetric, antisymmetric };

// Ordered-pair basis of the sector: (n1, n2) with n1 <= n2 (symmetric) or
// n1 < n2 (antisymmetric), enumerated row-major in n1.
struct PairBasis {
  Sector sector = Sector::symmetric;
  int n_sites = 0;

  long dim() const;
  long index(int n1, int n2) const;          // requires canonical order
  std::pair<int, int> state(long idx) const; // inverse of index
};

// Two-particle hopping Hamiltonian in the sector basis, with Hubbard pair
// energies u_minus / u_plus on double occupation of sites N/2 - m and
// N/2 + m. Open chain; hopping amplitude -1 between distinct-site states and
// -sqrt(2) between a doubly-occupied site and its neighbors (the symmetric
// combination carries the extra sqrt(2)). The antisymmetric sector has no
// doubly-occupied states, so the interaction never enters there.
Eigen::SparseMatrix<double> pair_hamiltonian(const PairBasis& basis,
                                             double u_minus, double u_plus,
                                             int m);

// Exact direct solve of (E + i eta - H) x = e_col in one exchange sector;
// element(row, col) returns x[row]. One factorization per instance, column
// solves cached, so many elements at one energy cost one factorization.
class PairResolvent {
 public:
  PairResolvent(const FiniteLattice& lat, Sector sector, double u_minus,
                double u_plus, int m, const ComplexEnergy& energy);

  cx element(std::pair<int, int> row, std::pair<int, int> col);
  const PairBasis& basis() const { return basis_; }
  int center() const { return center_; }

 private:
  PairBasis basis_;
  int center_ = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<cx>> lu_;
  std::map<long, Eigen::VectorXcd> cols_;
};

// Broadening large enough to smear the finite-lattice level spacing.
double default_oracle_eta(int n_sites);

// Clean-lattice pair Green elements from the finite resolvent, centered so
// they correspond to the infinite-lattice onsite element and the element
// between the two turnstile sites at separation 2m.
struct OracleGreens {
  cx onsite;
  cx offdiag;
};
OracleGreens pair_green_oracle(const FiniteLattice& lat, int m,
                               const ComplexEnergy& energy);

// T-matrix extracted from the finite lattice with a single Hubbard impurity
// of strength u at the center: T = (G - G0) / G0^2 at the impurity element.
cx extract_t_matrix(const FiniteLattice& lat, double u,
                    const ComplexEnergy& energy);

// True iff the antisymmetric-sector Hamiltonian with interactions
// (u_minus, u_plus) is identical, entry for entry with no tolerance, to the
// one with interactions switched off. Pauli exclusion makes this structural:
// no basis state puts two electrons on one site.
bool triplet_exclusion_check(const FiniteLattice& lat, int m, double u_minus,
                             double u_plus);

// One-body resolvent element on the clean open chain, offsets relative to
// the chain center. Independent check of the single-particle Green function.
cx single_resolvent_element(int n_sites, const ComplexEnergy& energy,
                            int row_offset, int col_offset);

// Real-time evolution of every occupied orbital of the one-body turnstile on
// a periodic ring through one pump cycle, with a norm-preserving implicit
// midpoint stepper. Charge is the time integral of the bond current at the
// bond diametrically opposite the turnstile, summed over occupied orbitals.
struct SlaterOptions {
  double fermi_energy = 0.0;
  double tau = 5000.0;   // cycle period
  int n_steps = 10000;   // implicit midpoint steps per period
};
struct SlaterResult {
  double charge = 0.0;
  double max_norm_drift = 0.0;   // max per-orbital | ||psi|| - 1 |
  double occupation_drift = 0.0; // | sum ||psi||^2 - n_orbitals |
  int n_orbitals = 0;
};
SlaterResult slater_sea_evolution(const FiniteLattice& lat, int m,
                                  const PumpCycle& cycle,
                                  const SlaterOptions& opt = {});

}  // namespace turnstile
