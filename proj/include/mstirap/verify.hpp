#pragma once

// Self-check suite behind `mstirap verify`: representation round trips,
// operator identities, frame residuals and analytic oracles.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mstirap {

struct VerifyOptions {
  std::uint64_t seed = 20211027;
  int n_states = 10000;        ///< random pure states per representation check
  int n_mixed = 1000;          ///< random density matrices
  /// Name of one check whose internal constant is bumped by 1e-3 relative,
  /// which makes that check alone fail. Empty for a clean run.
  std::string perturb;
};

struct CheckResult {
  std::string name;
  double value;      ///< worst-case error
  double tolerance;  ///< pass when value < tolerance
  bool pass;
};

struct SuiteResult {
  std::string name;
  double seconds;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool pass() const;
  const CheckResult* find(const std::string& check) const;
  nlohmann::json to_json() const;
};

std::vector<std::string> verify_check_names();
VerifyReport run_verify(const VerifyOptions& opts = {});

}  // namespace mstirap
