#include <doctest.h>

#include "alloy/nonstrict.hpp"

using namespace alloy;

TEST_SUITE_BEGIN("nonstrict");

TEST_CASE("projection family members") {
  Matrix p_half = p_of_r(0.5);
  Matrix expected_half(2, 2);
  expected_half << 0.5, 0.5, 0.5, 0.5;
  CHECK((p_half - expected_half).norm() < 1e-15);

  Matrix p_quarter = p_of_r(0.25);
  Matrix expected_quarter(2, 2);
  double s = std::sqrt(3.0) / 4.0;
  expected_quarter << 0.25, s, s, 0.75;
  CHECK((p_quarter - expected_quarter).norm() < 1e-15);

  for (double r : {1e-6, 0.3, 0.9999}) {
    Matrix p = p_of_r(r);
    CHECK((p * p - p).norm() < 1e-14);
    CHECK((p - p.adjoint()).norm() == 0.0);
    RealVector spec = hermitian_spectrum(p);
    CHECK(spec(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(spec(1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(p_of_r(0.0), std::domain_error);
  CHECK_THROWS_AS(p_of_r(1.0), std::domain_error);
  CHECK_THROWS_AS(p_of_r(-0.5), std::domain_error);
}

TEST_CASE("closed forms of the single-square intrinsic pair") {
  auto [E, F] = single_square_intrinsic(0.25);
  // E applied to diag(1, 0) gives (1/4) 1
  Vector e1(2);
  e1 << 1.0, 0.0;
  Vector img = E * e1;
  CHECK(std::abs(img(0) - Complex(0.25)) < 1e-13);
  CHECK(std::abs(img(1) - Complex(0.25)) < 1e-13);

  // unitality: E(1) = 1
  Vector ones(2);
  ones << 1.0, 1.0;
  CHECK((Vector(E * ones) - ones).norm() < 1e-13);

  auto [E3, F3] = single_square_intrinsic(1.0 / 3.0);
  Vector e2(2);
  e2 << 0.0, 1.0;
  Vector f_img = F3 * e2;
  CHECK(std::abs(f_img(0) - Complex(1.0 / 3.0)) < 1e-13);
  CHECK(std::abs(f_img(1) - Complex(1.0 / 3.0)) < 1e-13);
}

TEST_CASE("truncations stay blends and alloys") {
  TruncatedBlend one = truncated_blend({0.5});
  BlendVerdict v1 = one.classify_truncation();
  SingleSquare sq = single_square(0.5);
  BlendVerdict v_single = classify(sq.quintuple);
  CHECK(v1.is_blend == v_single.is_blend);
  CHECK(v1.is_alloy == v_single.is_alloy);

  TruncatedBlend three = truncated_blend({0.5, 0.25, 0.125});
  BlendVerdict v3 = three.classify_truncation();
  CHECK(v3.is_blend);
  CHECK(v3.is_alloy);
  CHECK(v3.dim_X == 12);

  TruncatedBlend eight = truncated_blend(preset_sequence("geometric", 8));
  BlendVerdict v8 = eight.classify_truncation();
  CHECK(v8.is_blend);
  CHECK(v8.is_alloy);

  CHECK_THROWS_AS(truncated_blend({}), std::invalid_argument);
}

TEST_CASE("witness norms follow the square root law") {
  // log grid inside (1e-8, 1 - 1e-8)
  for (double exp10 = -8.0; exp10 < 0.0; exp10 += 0.5) {
    double r = std::pow(10.0, exp10);
    auto rows = strictness_decay({r});
    CHECK(std::abs(rows[0].witness_norm - std::sqrt(r)) < 1e-12);
    double r_top = 1.0 - r;
    auto rows_top = strictness_decay({r_top});
    CHECK(std::abs(rows_top[0].witness_norm - std::sqrt(r_top)) < 1e-12);
  }
}

TEST_CASE("decay of the harmonic family") {
  auto rows = strictness_decay(preset_sequence("harmonic", 100));
  REQUIRE(rows.size() == 100);
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    CHECK(std::abs(row.witness_norm - std::sqrt(1.0 / row.m)) < 1e-12);
    CHECK(row.k_upper <= previous + 1e-15);
    previous = row.k_upper;
  }
  CHECK(rows.back().k_upper == doctest::Approx(0.1).epsilon(1e-12));

  // a single block at r = 1/4: witness is exactly one half
  auto single = strictness_decay({0.25});
  CHECK(single[0].witness_norm == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("constant family does not decay") {
  auto rows = strictness_decay(preset_sequence("constant", 40));
  for (const auto& row : rows) {
    CHECK(row.k_upper == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  }
}

TEST_CASE("presets") {
  auto h = preset_sequence("harmonic", 3);
  CHECK(h == std::vector<double>{1.0, 0.5, 1.0 / 3.0});
  auto g = preset_sequence("geometric", 3);
  CHECK(g == std::vector<double>{0.5, 0.25, 0.125});
  CHECK_THROWS_AS(preset_sequence("unknown", 3), std::invalid_argument);
}

TEST_SUITE_END();
