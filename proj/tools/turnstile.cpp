// Command-line front end: subcommands green, pump, fig2b, fig3, oracle,
// validate. Exit codes: 0 success, 1 computation/acceptance failure,
// 2 usage or config error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "turnstile/config.hpp"
#include "turnstile/io.hpp"
#include "turnstile/lattice_green.hpp"
#include "turnstile/oracle.hpp"
#include "turnstile/pump.hpp"
#include "turnstile/sweep.hpp"
#include "turnstile/validate.hpp"

namespace {

using turnstile::RunConfig;

int cmd_green(const RunConfig& cfg, bool with_oracle) {
  using namespace turnstile;
  const auto grid = linear_grid(cfg.green_e_lo, cfg.green_e_hi, cfg.green_n);
  // an oracle comparison needs broadening above the finite level spacing,
  // and both sides must use the same broadening to be comparable
  const double eta = with_oracle
                         ? std::max(cfg.eta, default_oracle_eta(cfg.oracle_n_sites))
                         : cfg.eta;
  GreenOptions gopt;
  gopt.abs_tol = cfg.k_abs_tol;

  std::vector<GreenRow> rows;
  for (double e : grid) {
    GreenRow row;
    row.e = e;
    row.eta = eta;
    const ComplexEnergy z{e, eta};
    try {
      row.greens = green_set(cfg.m, z, cfg.evanescent, gopt);
    } catch (const std::exception& ex) {
      row.ok = false;
      row.err = ex.what();
      rows.push_back(row);
      continue;
    }
    if (with_oracle) {
      try {
        FiniteLattice lat;
        lat.n_sites = cfg.oracle_n_sites;
        const OracleGreens og = pair_green_oracle(lat, cfg.m, z);
        const double rel_on =
            std::abs(row.greens.g0 - og.onsite) / std::abs(row.greens.g0);
        const double rel_off =
            std::abs(row.greens.gd - og.offdiag) / std::abs(row.greens.gd);
        row.has_oracle = true;
        row.oracle_rel_err = std::max(rel_on, rel_off);
      } catch (const std::exception& ex) {
        row.err = ex.what();
      }
    }
    rows.push_back(row);
  }
  write_output(cfg.out_path, green_csv(rows, with_oracle));
  return 0;
}

int cmd_pump(const RunConfig& cfg) {
  using namespace turnstile;
  LatticeModel model;
  model.m = cfg.m;
  const PumpCycle cyc = cfg.cycle();
  const PairDistribution dist = cfg.distribution();
  const PumpOptions opt = cfg.pump_options();

  nlohmann::json j;
  try {
    const PumpResult res = pumped_singlets(cyc, model, dist, opt);
    j["q_singlets"] = res.q_singlets;
    j["error_estimate"] = res.error_estimate;
    j["mode"] = dist.mode == DistributionMode::zero_T ? "zero_T" : "finite_T";
    j["cycle"] = nlohmann::json::array();
    for (const auto& v : cyc.vertices) j["cycle"].push_back({v[0], v[1]});
    const AdiabaticityReport ad = adiabaticity_check(cfg.tau, model, dist);
    j["adiabaticity"] = {{"tau", cfg.tau},
                         {"dwell_time", ad.dwell_time},
                         {"ratio", ad.ratio},
                         {"adiabatic", ad.adiabatic},
                         {"message", ad.message}};
    j["legs"] = nlohmann::json::array();
    for (const auto& d : res.diagnostics) {
      j["legs"].push_back({{"from", {d.from[0], d.from[1]}},
                           {"to", {d.to[0], d.to[1]}},
                           {"contribution", d.contribution},
                           {"quad_error", d.quad_error},
                           {"evals", d.evals}});
    }
  } catch (const PoleError& ex) {
    j["error"] = std::string("kernel pole: ") + ex.what();
    write_output(cfg.out_path, j.dump(2) + "\n");
    return 1;
  }
  write_output(cfg.out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_fig2b(const RunConfig& cfg) {
  using namespace turnstile;
  LatticeModel model;
  model.m = cfg.m;
  SweepOptions sopt;
  sopt.parallel = cfg.parallel;
  sopt.pump = cfg.pump_options();
  const auto cells =
      footprint_sweep(linear_grid(cfg.fig2b_u_lo, cfg.fig2b_u_hi, cfg.fig2b_n),
                      model, cfg.distribution(), sopt);
  int failed = 0;
  for (const auto& c : cells) {
    if (!c.ok) {
      ++failed;
      std::cerr << "cell (" << c.u_min << ", " << c.u_max
                << ") failed: " << c.message << "\n";
    }
  }
  write_output(cfg.out_path, fig2b_csv(cells));
  if (failed > 0) std::cerr << failed << " cells failed\n";
  return 0;
}

int cmd_fig3(const RunConfig& cfg) {
  using namespace turnstile;
  const int n =
      static_cast<int>(std::lround((cfg.fig3_e_hi - cfg.fig3_e_lo) /
                                   cfg.fig3_step)) +
      1;
  SweepOptions sopt;
  sopt.parallel = cfg.parallel;
  sopt.pump = cfg.pump_options();
  const auto cells =
      energy_sweep(linear_grid(cfg.fig3_e_lo, cfg.fig3_e_hi, n),
                   cfg.fig3_m_list, cfg.cycle(), cfg.distribution(), sopt);
  int failed = 0;
  for (const auto& c : cells) {
    if (!c.ok) {
      ++failed;
      std::cerr << "cell (e_max=" << c.e_max << ", m=" << c.m
                << ") failed: " << c.message << "\n";
    }
  }
  write_output(cfg.out_path, fig3_csv(cells));
  if (failed > 0) std::cerr << failed << " cells failed\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  using namespace turnstile;
  const double eta =
      cfg.oracle_eta > 0.0 ? cfg.oracle_eta
                           : default_oracle_eta(cfg.oracle_n_sites);
  GreenOptions gopt;
  gopt.abs_tol = cfg.k_abs_tol;
  FiniteLattice lat;
  lat.n_sites = cfg.oracle_n_sites;

  std::vector<OracleRow> rows;
  const auto grid = linear_grid(cfg.green_e_lo, cfg.green_e_hi, cfg.green_n);
  for (double e : grid) {
    const ComplexEnergy z{e, eta};
    PairResolvent res(lat, Sector::symmetric, 0.0, 0.0, 1, z);
    const int c = res.center();
    rows.push_back({"g0_onsite", 0, e, eta, g0_onsite(z, gopt),
                    res.element({c, c}, {c, c})});
    for (int m : {1, 2}) {
      rows.push_back({"g0_offdiag", m, e, eta, g0_offdiag(m, z, gopt),
                      res.element({c + m, c + m}, {c - m, c - m})});
    }
  }
  const ComplexEnergy z0{0.0, std::max(eta, 1e-3)};
  rows.push_back({"t_matrix_u2", 0, 0.0, z0.eta,
                  t_matrix(2.0, g0_onsite(z0, gopt)),
                  extract_t_matrix(lat, 2.0, z0)});
  write_output(cfg.out_path, oracle_csv(rows));
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  using namespace turnstile;
  const AcceptanceReport rep = run_acceptance(cfg);
  std::cout << report_text(rep);
  const std::string json = report_json(rep);
  if (!cfg.out_path.empty()) {
    write_output(cfg.out_path, json);
  } else {
    std::cout << json;
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "singlet-pair turnstile: adiabatic pumping of spin-singlet electron "
      "pairs through a one-dimensional chain with two cycled pair "
      "interactions"};
  app.require_subcommand(1);
  app.footer("config keys and defaults:\n" + turnstile::defaults_table());

  std::string config_path, out_path, mode, pairing, evanescent;
  double eta = -1.0, beta = -1.0;
  bool with_oracle = false;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_flag("--with-oracle", with_oracle,
               "green: add a finite-lattice comparison column");
  app.add_option("--mode", mode, "zero_T or finite_T")
      ->check(CLI::IsMember({"zero_T", "finite_T"}));
  app.add_option("--sign-pairing", pairing, "printed or alternate")
      ->check(CLI::IsMember({"printed", "alternate"}));
  app.add_option("--evanescent-branch", evanescent, "keep or drop")
      ->check(CLI::IsMember({"keep", "drop"}));
  app.add_option("--eta", eta, "kernel broadening override");
  app.add_option("--beta", beta, "inverse temperature override");

  auto* green = app.add_subcommand("green", "tabulate pair Green elements");
  auto* pump = app.add_subcommand("pump", "pumped singlets for one cycle");
  auto* fig2b =
      app.add_subcommand("fig2b", "footprint sweep over square cycles");
  auto* fig3 = app.add_subcommand("fig3", "sweep over available pair energy");
  auto* oracle =
      app.add_subcommand("oracle", "quadrature vs finite-lattice comparison");
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message/help
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = turnstile::parse_config_file(config_path);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!mode.empty()) turnstile::apply_override(cfg, "mode", mode);
    if (!pairing.empty())
      turnstile::apply_override(cfg, "sign_pairing", pairing);
    if (!evanescent.empty())
      turnstile::apply_override(cfg, "evanescent_branch", evanescent);
    if (eta > 0.0) cfg.eta = eta;
    if (beta > 0.0) cfg.beta = beta;
    cfg.validate();

    if (green->parsed()) return cmd_green(cfg, with_oracle);
    if (pump->parsed()) return cmd_pump(cfg);
    if (fig2b->parsed()) return cmd_fig2b(cfg);
    if (fig3->parsed()) return cmd_fig3(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
    return 2;
  } catch (const turnstile::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
