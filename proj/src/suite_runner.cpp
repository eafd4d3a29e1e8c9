#include "alloy/suite_runner.hpp"

#include <sstream>

#include <json.hpp>

#include "alloy/auto_polar.hpp"
#include "alloy/serialize.hpp"

namespace alloy {

namespace {

std::string instance_tag(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "i%03d", i);
  return buf;
}

void push(std::vector<CheckResult>& out, const std::string& suite, const std::string& check,
          double residual, double pass_tol, std::string detail = {}) {
  out.push_back(CheckResult{suite, check, residual, residual <= pass_tol,
                            std::move(detail)});
}

// supplied instances override the generated stream
FundamentalData instance_for(const SuiteConfig& cfg, int i, Rng& rng) {
  if (!cfg.instances.empty()) {
    return cfg.instances[static_cast<size_t>(i) % cfg.instances.size()];
  }
  int dim = cfg.dims[static_cast<size_t>(i) % cfg.dims.size()];
  return random_fundamental_data(dim, rng, cfg.tol);
}

int instance_count(const SuiteConfig& cfg) {
  return cfg.instances.empty() ? cfg.count
                               : static_cast<int>(cfg.instances.size());
}

}  // namespace

std::vector<CheckResult> run_verify_identities(const SuiteConfig& cfg) {
  const double pass_tol = cfg.pass_tol > 0.0 ? cfg.pass_tol : kIdentityPassTol;
  std::vector<CheckResult> out;
  Rng rng(cfg.seed);
  const int count = instance_count(cfg);
  for (int i = 0; i < count; ++i) {
    const std::string tag = instance_tag(i) + ".";
    try {
      FundamentalData fd = instance_for(cfg, i, rng);
      TwoPointAlloy t = build_alloy_from_fundamental_data(fd);
      IntrinsicData data = compute_intrinsic(t);

      for (const auto& [key, value] : intrinsic_identity_residuals(t, data)) {
        push(out, "verify-identities", tag + key, value, pass_tol);
      }
      ConditionalExpectation G = from_h(t, data, fd.h, rng);
      CondExpReport rep = expectation_report(t, data, G, rng);
      for (const auto& [key, value] : rep.residuals) {
        if (key == "h_min_eigenvalue") continue;  // a spectrum, not a residual
        push(out, "verify-identities", tag + key, value, pass_tol);
      }
      push(out, "verify-identities", tag + "covariant", rep.covariant ? 0.0 : 1.0, pass_tol,
           expectation_report_to_json(rep).dump());
    } catch (const Error& e) {
      push(out, "verify-identities", tag + std::string("exception: ") + e.what(), 1.0,
           pass_tol);
    }
  }
  return out;
}

std::vector<CheckResult> run_roundtrip(const SuiteConfig& cfg) {
  const double pass_tol = cfg.pass_tol > 0.0 ? cfg.pass_tol : kRoundtripPassTol;
  std::vector<CheckResult> out;
  Rng rng(cfg.seed);
  const int count = instance_count(cfg);
  for (int i = 0; i < count; ++i) {
    const std::string tag = instance_tag(i) + ".";
    try {
      FundamentalData fd = instance_for(cfg, i, rng);
      TwoPointAlloy t = build_alloy_from_fundamental_data(fd);

      BlendVerdict verdict = classify(quintuple_of(t));
      push(out, "roundtrip", tag + "classified_as_alloy", verdict.is_alloy ? 0.0 : 1.0,
           pass_tol, verdict_to_json(verdict).dump());

      FundamentalData extracted;
      if (cfg.h_seed) {
        IntrinsicData data = compute_intrinsic(t);
        extracted = extract_fundamental_data(t, from_h(t, data, fd.h, rng), rng);
      } else {
        extracted = extract_fundamental_data(t, rng);
      }
      ReconstructionResult rec = reconstruction_isomorphism(t, extracted, rng);
      for (const auto& [key, value] : rec.residuals) {
        push(out, "roundtrip", tag + key, value, pass_tol);
      }
    } catch (const Error& e) {
      push(out, "roundtrip", tag + std::string("exception: ") + e.what(), 1.0, pass_tol);
    }
  }
  return out;
}

std::vector<DecayRow> counterexample_rows(const SuiteConfig& cfg) {
  return strictness_decay(preset_sequence(cfg.preset, cfg.n));
}

std::string counterexample_report(const SuiteConfig& cfg) {
  auto rows = counterexample_rows(cfg);
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "m,witness_norm,k_upper\n";
    for (const auto& r : rows) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", r.m, r.witness_norm, r.k_upper);
      os << buf;
    }
  } else {
    for (const auto& r : rows) {
      nlohmann::json j{{"m", r.m}, {"witness_norm", r.witness_norm}, {"k_upper", r.k_upper}};
      os << j.dump() << "\n";
    }
  }
  return os.str();
}

CommutingSquare square_from_config(const SuiteConfig& cfg) {
  if (cfg.has_custom_square) {
    RealVector w(static_cast<Eigen::Index>(cfg.custom_weights.size()));
    for (size_t i = 0; i < cfg.custom_weights.size(); ++i)
      w(static_cast<Eigen::Index>(i)) = cfg.custom_weights[i];
    return CommutingSquare(static_cast<int>(cfg.custom_weights.size()), std::move(w),
                           cfg.partition_B, cfg.partition_C, cfg.tol);
  }
  if (cfg.weights == "product") {
    RealVector u(static_cast<Eigen::Index>(cfg.u.size()));
    RealVector v(static_cast<Eigen::Index>(cfg.v.size()));
    for (size_t i = 0; i < cfg.u.size(); ++i) u(static_cast<Eigen::Index>(i)) = cfg.u[i];
    for (size_t i = 0; i < cfg.v.size(); ++i) v(static_cast<Eigen::Index>(i)) = cfg.v[i];
    return CommutingSquare::grid_product(u, v, cfg.tol);
  }
  return CommutingSquare::grid_uniform(cfg.rows, cfg.cols, cfg.tol);
}

std::vector<CheckResult> run_commuting_square(const SuiteConfig& cfg) {
  const double pass_tol = cfg.pass_tol > 0.0 ? cfg.pass_tol : kJonesPassTol;
  std::vector<CheckResult> out;
  const std::string suite = "commuting-square";
  try {
    CommutingSquare sq = square_from_config(cfg);
    auto [m, jt] = gns(sq);
    const int n = sq.omega();

    push(out, suite, "g_equals_ef",
         std::max((jt.e * jt.f - jt.g).norm(), (jt.f * jt.e - jt.g).norm()), pass_tol);

    double rel_g = 0.0, rel_e = 0.0, rel_f = 0.0, wadj = 0.0;
    for (int i = 0; i < n; ++i) {
      Vector a = Vector::Zero(n);
      a(i) = 1.0;
      Matrix la = m.lambda(a);
      rel_g = std::max(rel_g,
                       (jt.g * la * jt.g - m.lambda(sq.G().cast<Complex>() * a) * jt.g).norm());
      rel_e = std::max(rel_e,
                       (jt.e * la * jt.e - m.lambda(sq.E().cast<Complex>() * a) * jt.e).norm());
      rel_f = std::max(rel_f,
                       (jt.f * la * jt.f - m.lambda(sq.F().cast<Complex>() * a) * jt.f).norm());
    }
    for (const Matrix* op : {&jt.e, &jt.f, &jt.g}) {
      wadj = std::max(wadj, (m.weighted_adjoint(*op) - *op).norm());
    }
    push(out, suite, "jones_relation_g", rel_g, pass_tol);
    push(out, suite, "jones_relation_e", rel_e, pass_tol);
    push(out, suite, "jones_relation_f", rel_f, pass_tol);
    push(out, suite, "weighted_self_adjointness", wadj, pass_tol);

    QuasiBasis qb = quasi_basis(sq);
    push(out, suite, "quasi_basis_identity", qb.reconstruction_residual, pass_tol);
    push(out, suite, "partition_of_unity", qb.partition_of_unity_residual, pass_tol);

    Rng rng(cfg.seed);
    double rank_one_worst = 0.0;
    for (int s = 0; s < std::min(cfg.samples, 200); ++s) {
      Vector a = rng.cgaussian_vector(n);
      Vector b = rng.cgaussian_vector(n);
      Vector eta = rng.cgaussian_vector(n);
      rank_one_worst = std::max(rank_one_worst, rank_one_formula(sq, a, b, eta));
    }
    push(out, suite, "rank_one_formula", rank_one_worst, pass_tol);

    const int c_blocks = static_cast<int>(sq.partition_C().size());
    double ineq_violation = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
      Vector a = rng.cgaussian_vector(n);
      int list_size = 1 + (s % c_blocks);
      std::vector<Vector> cs;
      for (int t2 = 0; t2 < list_size; ++t2) {
        cs.push_back(sq.F().cast<Complex>() * rng.cgaussian_vector(n));
      }
      auto res = main_inequality(sq, a, cs);
      ineq_violation = std::max(ineq_violation, res.lhs - res.rhs);
    }
    push(out, suite, "main_inequality", std::max(0.0, ineq_violation), pass_tol);

    double hs_violation = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
      Vector a = rng.cgaussian_vector(n);
      auto res = hilbert_schmidt_bound(sq, a);
      hs_violation = std::max(hs_violation, res.hs_norm - res.bound);
    }
    push(out, suite, "hilbert_schmidt_bound", std::max(0.0, hs_violation), pass_tol);

    auto unit_res = hilbert_schmidt_bound(sq, Vector::Ones(n));
    push(out, suite, "hilbert_schmidt_saturation_at_unit",
         std::max(std::abs(unit_res.hs_norm - 1.0), std::abs(unit_res.bound - 1.0)), pass_tol);

    KAlgebras ks = k_algebras(sq);
    push(out, suite, "multiplier_inclusion", ks.multiplier_residual, pass_tol);
    push(out, suite, "compacts_dimension",
         ks.K_g->dim() == n * n ? 0.0 : 1.0, pass_tol);

    BlendVerdict verdict = blend_of_compacts(sq);
    push(out, suite, "blend_verdict", verdict.is_blend ? 0.0 : 1.0, pass_tol,
         verdict_to_json(verdict).dump());
  } catch (const Error& e) {
    push(out, suite, std::string("exception: ") + e.what(), 1.0, pass_tol);
  } catch (const std::invalid_argument& e) {
    push(out, suite, std::string("invalid configuration: ") + e.what(), 1.0, pass_tol);
  }
  return out;
}

std::vector<CheckResult> run_random_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out = run_verify_identities(cfg);
  auto rt = run_roundtrip(cfg);
  out.insert(out.end(), rt.begin(), rt.end());

  SuiteConfig sq_uniform = cfg;
  sq_uniform.rows = 2;
  sq_uniform.cols = 2;
  sq_uniform.weights = "uniform";
  auto cs1 = run_commuting_square(sq_uniform);
  out.insert(out.end(), cs1.begin(), cs1.end());

  SuiteConfig sq_product = cfg;
  sq_product.weights = "product";
  sq_product.u = {0.3, 0.7};
  sq_product.v = {0.2, 0.3, 0.5};
  auto cs2 = run_commuting_square(sq_product);
  out.insert(out.end(), cs2.begin(), cs2.end());

  // decay sanity on the harmonic family
  SuiteConfig ce = cfg;
  ce.preset = "harmonic";
  auto rows = counterexample_rows(ce);
  double worst = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.witness_norm - std::sqrt(1.0 / r.m)));
    if (r.k_upper > previous + 1e-15) monotone = false;
    previous = r.k_upper;
  }
  const double pass_tol = cfg.pass_tol > 0.0 ? cfg.pass_tol : 1e-10;
  push(out, "counterexample", "witness_norms_match_sqrt_r", worst, pass_tol);
  push(out, "counterexample", "bound_nonincreasing", monotone ? 0.0 : 1.0, pass_tol);
  return out;
}

std::string to_json_lines(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    nlohmann::json j{{"suite", r.suite}, {"check", r.check}, {"residual", r.residual},
                     {"pass", r.pass}};
    if (!r.detail_json.empty()) j["detail"] = nlohmann::json::parse(r.detail_json);
    os << j.dump() << "\n";
  }
  return os.str();
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace alloy
