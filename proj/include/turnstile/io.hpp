#pragma once

#include <string>
#include <vector>

#include "turnstile/lattice_green.hpp"
#include "turnstile/sweep.hpp"

namespace turnstile {

// CSV emission. Column orders are part of the artifact's contract and fixed;
// numbers print with enough digits to round-trip a double.

std::string format_double(double x);

struct GreenRow {
  double e = 0.0;
  double eta = 0.0;
  GreenSet greens;
  bool ok = true;
  std::string err;
  bool has_oracle = false;
  double oracle_rel_err = 0.0;
};

// columns: E, eta, re/im of onsite, offdiag, plus, minus branches,
// oracle_rel_err when requested, then an err column (empty on success)
std::string green_csv(const std::vector<GreenRow>& rows, bool with_oracle);

// columns: u_min, u_max, q_singlets
std::string fig2b_csv(const std::vector<FootprintCell>& cells);

// columns: e_max, m, q_singlets
std::string fig3_csv(const std::vector<EnergyCell>& cells);

struct OracleRow {
  std::string quantity;
  int m = 0;
  double e = 0.0;
  double eta = 0.0;
  cx quad;
  cx oracle;
};

// columns: quantity, m, E, eta, re_quad, im_quad, re_oracle, im_oracle, rel_err
std::string oracle_csv(const std::vector<OracleRow>& rows);

// write to the path, or to stdout when the path is empty
void write_output(const std::string& path, const std::string& content);

}  // namespace turnstile
