#pragma once

#include <string>
#include <vector>

#include "turnstile/config.hpp"

namespace turnstile {

// The artifact's acceptance suite: ten independent checks, each timed and
// reported with a one-line verdict. A check that cannot meet its bound
// reports [FAIL] with the measured numbers; nothing is loosened to force a
// pass. The suite honors the config's sign-pairing, evanescent-branch, and
// parallelism switches; the physics parameters of each check are fixed.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double runtime_s = 0.0;
  std::string detail;  // measured numbers behind the verdict
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_pass() const;
};

AcceptanceReport run_acceptance(const RunConfig& cfg);

// one "[PASS]/[FAIL] <id>. <name> (<runtime>): <detail>" line per criterion
std::string report_text(const AcceptanceReport& rep);
std::string report_json(const AcceptanceReport& rep);

}  // namespace turnstile
