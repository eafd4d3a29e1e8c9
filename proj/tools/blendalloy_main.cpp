#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alloy/serialize.hpp"
#include "alloy/suite_runner.hpp"

namespace {

using alloy::SuiteConfig;

void apply_config_file(SuiteConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);

  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("pass_tol")) cfg.pass_tol = j["pass_tol"].get<double>();
  if (j.contains("dims")) cfg.dims = j["dims"].get<std::vector<int>>();
  if (j.contains("count")) cfg.count = j["count"].get<int>();
  if (j.contains("preset")) cfg.preset = j["preset"].get<std::string>();
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("rows")) cfg.rows = j["rows"].get<int>();
  if (j.contains("cols")) cfg.cols = j["cols"].get<int>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("weights")) {
    if (j["weights"].is_string()) {
      cfg.weights = j["weights"].get<std::string>();
    } else {
      cfg.has_custom_square = true;
      cfg.custom_weights = j["weights"].get<std::vector<double>>();
    }
  }
  if (j.contains("u")) cfg.u = j["u"].get<std::vector<double>>();
  if (j.contains("v")) cfg.v = j["v"].get<std::vector<double>>();
  if (j.contains("partition_B")) {
    cfg.partition_B = j["partition_B"].get<std::vector<std::vector<int>>>();
    cfg.has_custom_square = true;
  }
  if (j.contains("partition_C")) {
    cfg.partition_C = j["partition_C"].get<std::vector<std::vector<int>>>();
    cfg.has_custom_square = true;
  }
  if (cfg.has_custom_square &&
      (cfg.custom_weights.empty() || cfg.partition_B.empty() || cfg.partition_C.empty())) {
    throw std::invalid_argument(
        "custom square config needs weights, partition_B and partition_C");
  }
  if (j.contains("instances")) {
    for (const auto& inst : j["instances"]) {
      cfg.instances.push_back(alloy::fundamental_data_from_json(inst));
    }
  }
  if (j.contains("h_seed")) cfg.h_seed = j["h_seed"].get<bool>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
}

int write_report(const SuiteConfig& cfg, const std::string& text, bool pass) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to " << cfg.out << "\n";
      return 2;
    }
    out << text;
  }
  return pass ? 0 : 1;
}

void add_common_flags(CLI::App* sub, SuiteConfig& cfg, std::string& config_path) {
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--tol", cfg.tol, "construction/validation tolerance");
  sub->add_option("--pass-tol", cfg.pass_tol, "pass threshold for residuals");
  sub->add_option("--out", cfg.out, "report output path (default stdout)");
  sub->add_option("--config", config_path, "JSON config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for blends and alloys of matrix *-algebras"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string config_path;

  auto* verify = app.add_subcommand("verify-identities",
                                    "identity suite on random fundamental-data alloys");
  add_common_flags(verify, cfg, config_path);
  verify->add_option("--dim", cfg.dims, "algebra dimensions to cycle through");
  verify->add_option("--count", cfg.count, "number of instances");

  auto* roundtrip = app.add_subcommand("roundtrip",
                                       "build/extract/rebuild loop with residual ledgers");
  add_common_flags(roundtrip, cfg, config_path);
  roundtrip->add_option("--dim", cfg.dims, "algebra dimensions to cycle through");
  roundtrip->add_option("--count", cfg.count, "number of instances");
  roundtrip->add_flag("--h-seed", cfg.h_seed,
                      "seed the covariant averaging with the instance expectation");

  auto* counter = app.add_subcommand("counterexample",
                                     "strictness-constant decay of the projection family");
  add_common_flags(counter, cfg, config_path);
  counter->add_option("--preset", cfg.preset, "r sequence: harmonic | geometric | constant");
  counter->add_option("--n", cfg.n, "number of blocks");
  counter->add_option("--format", cfg.format, "row format: json | csv");

  auto* square = app.add_subcommand("commuting-square",
                                    "Jones projection suite on a weighted square");
  add_common_flags(square, cfg, config_path);
  square->add_option("--rows", cfg.rows, "grid rows");
  square->add_option("--cols", cfg.cols, "grid columns");
  square->add_option("--weights", cfg.weights, "uniform | product");
  square->add_option("--u", cfg.u, "row marginals for product weights");
  square->add_option("--v", cfg.v, "column marginals for product weights");
  square->add_option("--samples", cfg.samples, "sample count for the inequality sweeps");

  auto* all = app.add_subcommand("random-suite", "all suites on generated instances");
  add_common_flags(all, cfg, config_path);
  all->add_option("--dim", cfg.dims, "algebra dimensions to cycle through");
  all->add_option("--count", cfg.count, "number of instances");
  all->add_option("--samples", cfg.samples, "sample count for the inequality sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    try {
      apply_config_file(cfg, config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    std::vector<alloy::CheckResult> results;
    if (app.got_subcommand(verify)) {
      results = alloy::run_verify_identities(cfg);
    } else if (app.got_subcommand(roundtrip)) {
      results = alloy::run_roundtrip(cfg);
    } else if (app.got_subcommand(counter)) {
      return write_report(cfg, alloy::counterexample_report(cfg), true);
    } else if (app.got_subcommand(square)) {
      results = alloy::run_commuting_square(cfg);
    } else {
      results = alloy::run_random_suite(cfg);
    }

    int failed = 0;
    for (const auto& r : results) {
      if (!r.pass) ++failed;
    }
    std::cerr << results.size() << " checks, " << failed << " failed\n";
    return write_report(cfg, alloy::to_json_lines(results), failed == 0);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const alloy::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
