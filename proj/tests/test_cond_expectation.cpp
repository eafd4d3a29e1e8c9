#include <doctest.h>

#include "alloy/auto_polar.hpp"
#include "alloy/crossed_z2.hpp"
#include "alloy/random_instances.hpp"

using namespace alloy;

namespace {

FundamentalData swap_data(double t) {
  AlgebraPtr A = diagonal_algebra(2);
  Matrix pi(2, 2);
  pi << 0, 1, 1, 0;
  Vector h(2);
  h << t, 1.0 - t;
  return FundamentalData{A, pi, h};
}

FundamentalData trivial_data() {
  AlgebraPtr A = diagonal_algebra(2);
  return FundamentalData{A, Matrix::Identity(2, 2), Vector(0.5 * A->identity_coords())};
}

}  // namespace

TEST_SUITE_BEGIN("condexp");

TEST_CASE("standard expectation of the crossed product") {
  FundamentalData fd = swap_data(0.5);
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  TwoPointAlloy t = canonical_alloy(cp);
  Rng rng(1);
  ConditionalExpectation G = standard_expectation(cp, t, rng);

  // h = G(p) = 1/2
  CHECK((G.h - 0.5 * fd.A->identity_coords()).norm() < 1e-14);
  // G kills the implementing unitary
  CHECK(G.apply(t, cp.varpi).norm() < 1e-14);

  IntrinsicData d = compute_intrinsic(t);
  auto residuals = explore_condition(t, d, G);
  for (double r : residuals) CHECK(r < 1e-12);
  CHECK(hk_covariance(t, d, G) < 1e-12);
  CHECK(is_covariant(t, d, G));

  // the expectation formula recovers E(a) = (a + pi(a))/2
  Matrix avg = 0.5 * (Matrix::Identity(2, 2) + fd.pi);
  CHECK((d.E - avg).norm() < 1e-12);
}

TEST_CASE("h condition residuals") {
  FundamentalData fd = swap_data(0.5);
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  TwoPointAlloy t = canonical_alloy(cp);
  IntrinsicData d = compute_intrinsic(t);

  CHECK(check_h_condition(t, d, fd.h) < 1e-12);

  // h = 0 leaves exactly max_a |(id - F)(a)| = 1/2 for the swap action
  Vector zero = Vector::Zero(2);
  CHECK(check_h_condition(t, d, zero) == doctest::Approx(0.5).epsilon(1e-12));
  Rng rng(2);
  CHECK_THROWS_AS(from_h(t, d, zero, rng), HConditionViolation);

  // for the swap action only h = 1/2 is admissible
  Vector skew(2);
  skew << 0.3, 0.3;
  CHECK_THROWS_AS(from_h(t, d, skew, rng), HConditionViolation);

  // h = 1 violates the condition for the swap action...
  Vector one = fd.A->identity_coords();
  CHECK_THROWS_AS(from_h(t, d, one, rng), HConditionViolation);

  // ...but is admissible when p is central; the result is positive yet
  // not faithful (k = 0)
  FundamentalData triv{fd.A, Matrix::Identity(2, 2),
                       Vector(0.5 * fd.A->identity_coords())};
  TwoPointAlloy t_triv = build_alloy_from_fundamental_data(triv);
  IntrinsicData d_triv = compute_intrinsic(t_triv);
  ConditionalExpectation G_one = from_h(t_triv, d_triv, one, rng);
  CHECK(pimsner_popa_constant(t_triv, G_one, rng) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("covariance criterion") {
  // swap action, h = diag(t, 1-t): covariant for every t
  for (double tval : {0.1, 0.25, 0.4}) {
    FundamentalData fd = swap_data(tval);
    TwoPointAlloy t = build_alloy_from_fundamental_data(fd);
    IntrinsicData d = compute_intrinsic(t);
    Rng rng(3);
    ConditionalExpectation G = from_h(t, d, fd.h, rng);
    CHECK(is_covariant(t, d, G));
  }

  // trivial action admits every diagonal h, but only h = 1/2 is covariant
  FundamentalData fd = trivial_data();
  TwoPointAlloy t = build_alloy_from_fundamental_data(fd);
  IntrinsicData d = compute_intrinsic(t);
  Rng rng(4);
  Vector skew(2);
  skew << 0.3, 0.6;
  ConditionalExpectation G_skew = from_h(t, d, skew, rng);
  CHECK_FALSE(is_covariant(t, d, G_skew));
  ConditionalExpectation G_half = from_h(t, d, Vector(0.5 * fd.A->identity_coords()), rng);
  CHECK(is_covariant(t, d, G_half));
}

TEST_CASE("trace expectation matches the standard one on crossed products") {
  FundamentalData fd = swap_data(0.5);
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  TwoPointAlloy t = canonical_alloy(cp);
  Rng rng(5);
  ConditionalExpectation G_std = standard_expectation(cp, t, rng);
  ConditionalExpectation G_tr = trace_expectation(t, rng);
  CHECK((G_std.map - G_tr.map).norm() < 1e-12);
}

TEST_CASE("covariantize") {
  // already covariant: averaging leaves the expectation unchanged
  FundamentalData fd = swap_data(0.5);
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  TwoPointAlloy t = canonical_alloy(cp);
  IntrinsicData d = compute_intrinsic(t);
  Rng rng(6);
  ConditionalExpectation G_std = standard_expectation(cp, t, rng);
  PhiPolarReport polar = verify_Phi_polar(t, d);
  ConditionalExpectation G_avg = covariantize(t, d, polar.PiX, G_std, rng);
  CHECK((G_avg.map - G_std.map).norm() < 1e-10);

  // a skewed faithful expectation becomes covariant after averaging
  FundamentalData fd2 = trivial_data();
  TwoPointAlloy t2 = build_alloy_from_fundamental_data(fd2);
  IntrinsicData d2 = compute_intrinsic(t2);
  Vector skew(2);
  skew << 0.3, 0.6;
  ConditionalExpectation G_skew = from_h(t2, d2, skew, rng);
  CHECK_FALSE(is_covariant(t2, d2, G_skew));
  PhiPolarReport polar2 = verify_Phi_polar(t2, d2);
  ConditionalExpectation G_cov = covariantize(t2, d2, polar2.PiX, G_skew, rng);
  CHECK(is_covariant(t2, d2, G_cov));
  CHECK((G_cov.h - 0.5 * fd2.A->identity_coords()).norm() < 1e-10);

  // default seed: trace expectation in, covariant out
  FundamentalData fd3 = swap_data(0.2);
  TwoPointAlloy t3 = build_alloy_from_fundamental_data(fd3);
  IntrinsicData d3 = compute_intrinsic(t3);
  PhiPolarReport polar3 = verify_Phi_polar(t3, d3);
  ConditionalExpectation G3 = covariantize(t3, d3, polar3.PiX, rng);
  CHECK(is_covariant(t3, d3, G3));

  // noncommutative base, trivial action: valid h are the scalars, and the
  // averaging pulls a skewed scalar back to 1/2
  AlgebraPtr m2 = full_matrix_algebra(2);
  FundamentalData fd4{m2, Matrix::Identity(4, 4), Vector(0.5 * m2->identity_coords())};
  TwoPointAlloy t4 = build_alloy_from_fundamental_data(fd4);
  IntrinsicData d4 = compute_intrinsic(t4);
  ConditionalExpectation G4_skew = from_h(t4, d4, Vector(0.3 * m2->identity_coords()), rng);
  CHECK_FALSE(is_covariant(t4, d4, G4_skew));
  PhiPolarReport polar4 = verify_Phi_polar(t4, d4);
  ConditionalExpectation G4 = covariantize(t4, d4, polar4.PiX, G4_skew, rng);
  CHECK(is_covariant(t4, d4, G4));
  CHECK((G4.h - 0.5 * m2->identity_coords()).norm() < 1e-10);

  // a nonscalar h violates the condition when the action is trivial on M2
  Vector bad = m2->decompose(m2->basis(0));  // h = E11
  CHECK_THROWS_AS(from_h(t4, d4, bad, rng), HConditionViolation);
}

TEST_CASE("Pimsner-Popa constants") {
  Rng rng(7);
  FundamentalData fd = swap_data(0.5);
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  TwoPointAlloy t = canonical_alloy(cp);
  ConditionalExpectation G = standard_expectation(cp, t, rng);
  CHECK(pimsner_popa_constant(t, G, rng) == doctest::Approx(0.5).epsilon(1e-12));

  FundamentalData fd2 = swap_data(0.25);
  TwoPointAlloy t2 = build_alloy_from_fundamental_data(fd2);
  IntrinsicData d2 = compute_intrinsic(t2);
  ConditionalExpectation G2 = from_h(t2, d2, fd2.h, rng);
  CHECK(pimsner_popa_constant(t2, G2, rng) == doctest::Approx(0.25).epsilon(1e-12));

  // singular h on the trivial-action alloy: alpha = 0, not faithful
  FundamentalData fd3 = trivial_data();
  TwoPointAlloy t3 = build_alloy_from_fundamental_data(fd3);
  IntrinsicData d3 = compute_intrinsic(t3);
  Vector singular(2);
  singular << 0.0, 0.5;
  ConditionalExpectation G3 = from_h(t3, d3, singular, rng);
  CHECK(pimsner_popa_constant(t3, G3, rng) == doctest::Approx(0.0).epsilon(1e-12));
  CondExpReport rep = expectation_report(t3, d3, G3, rng);
  CHECK_FALSE(rep.faithful);
  CHECK_FALSE(rep.covariant);
}

TEST_CASE("expectation report on a covariant instance") {
  Rng rng(8);
  FundamentalData fd = random_fundamental_data(8, rng);
  TwoPointAlloy t = build_alloy_from_fundamental_data(fd);
  IntrinsicData d = compute_intrinsic(t);
  ConditionalExpectation G = from_h(t, d, fd.h, rng);
  CondExpReport rep = expectation_report(t, d, G, rng);
  CHECK(rep.covariant);
  CHECK(rep.faithful);
  CHECK(rep.alpha > 0.04);
  for (const auto& [key, value] : rep.residuals) {
    if (key == "h_min_eigenvalue") continue;
    INFO(key);
    CHECK(value < 1e-9);
  }
  // invertibility of h and k for covariant expectations
  CHECK(rep.h_spectrum.front() > 1e-9);
  CHECK(rep.h_spectrum.back() < 1.0 - 1e-9);
}

TEST_CASE("annihilation probe") {
  Rng rng(9);
  FundamentalData fd = swap_data(0.25);
  TwoPointAlloy t = build_alloy_from_fundamental_data(fd);
  IntrinsicData d = compute_intrinsic(t);
  ConditionalExpectation G = from_h(t, d, fd.h, rng);

  Vector zero = Vector::Zero(2);
  CHECK(ahzero_probe(t, G, zero).ok);

  Vector a(2);
  a << 1.0, -2.0;
  AhZeroVerdict v = ahzero_probe(t, G, a);
  CHECK(v.ok);
  CHECK(v.alpha == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v.lower_slack >= -1e-12);

  // singular h: a witness annihilator is exhibited
  FundamentalData fd3 = trivial_data();
  TwoPointAlloy t3 = build_alloy_from_fundamental_data(fd3);
  IntrinsicData d3 = compute_intrinsic(t3);
  Vector singular(2);
  singular << 0.0, 0.5;
  ConditionalExpectation G3 = from_h(t3, d3, singular, rng);
  AhZeroVerdict v3 = ahzero_probe(t3, G3, a);
  CHECK_FALSE(v3.ok);
  REQUIRE(v3.witness.has_value());
  CHECK(t3.A().from_coords(*v3.witness).norm() > 0.5);
  CHECK(v3.witness_residual < 1e-10);
}

TEST_SUITE_END();
