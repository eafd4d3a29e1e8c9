#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alloy/commuting_square.hpp"
#include "alloy/nonstrict.hpp"
#include "alloy/random_instances.hpp"

namespace alloy {

struct SuiteConfig {
  std::uint64_t seed = 1;
  double tol = kDefaultTol;   // construction / validation tolerance
  double pass_tol = 0.0;      // 0 = per-suite default
  std::vector<int> dims = {2, 4, 8};
  int count = 10;
  std::string preset = "harmonic";
  int n = 100;
  int rows = 2, cols = 2;
  std::string weights = "uniform";  // uniform | product | custom
  std::vector<double> u, v;         // product weight marginals
  // custom square (from a JSON config)
  bool has_custom_square = false;
  std::vector<double> custom_weights;
  std::vector<std::vector<int>> partition_B, partition_C;
  // user-supplied instances instead of generated ones
  std::vector<FundamentalData> instances;
  // seed the covariant averaging with the instance's own expectation
  // instead of the trace-induced one
  bool h_seed = false;
  int samples = 1000;
  std::string out;            // report path; empty = stdout
  std::string format = "json";  // json | csv (counterexample rows)
};

struct CheckResult {
  std::string suite;
  std::string check;
  double residual = 0.0;
  bool pass = false;
  std::string detail_json;  // optional embedded object, e.g. a blend verdict
};

inline constexpr double kIdentityPassTol = 1e-9;
inline constexpr double kRoundtripPassTol = 1e-8;
inline constexpr double kJonesPassTol = 1e-10;

/// Identity suite over seeded random fundamental-data alloys: product rules,
/// compatibilities, expectation formulas, hk covariance, intertwinings,
/// adjoint symmetry, and the product/adjoint recovery formulas.
std::vector<CheckResult> run_verify_identities(const SuiteConfig& cfg);

/// Build -> extract -> rebuild loop with all reconstruction residuals.
std::vector<CheckResult> run_roundtrip(const SuiteConfig& cfg);

/// Decay rows of the projection-family counterexample.
std::vector<DecayRow> counterexample_rows(const SuiteConfig& cfg);
std::string counterexample_report(const SuiteConfig& cfg);

/// Jones-projection suite on a commuting square described by the config.
std::vector<CheckResult> run_commuting_square(const SuiteConfig& cfg);

/// Everything above on generated instances.
std::vector<CheckResult> run_random_suite(const SuiteConfig& cfg);

CommutingSquare square_from_config(const SuiteConfig& cfg);

std::string to_json_lines(const std::vector<CheckResult>& results);
bool all_pass(const std::vector<CheckResult>& results);

}  // namespace alloy
