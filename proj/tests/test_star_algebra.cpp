#include <doctest.h>

#include "alloy/nonstrict.hpp"
#include "alloy/random_instances.hpp"
#include "alloy/rng.hpp"
#include "alloy/serialize.hpp"
#include "alloy/star_algebra.hpp"

using namespace alloy;

namespace {

Matrix unit_matrix(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("matalg");

TEST_CASE("decompose against fixed bases") {
  // unital algebra with the identity as first basis element
  std::vector<Matrix> basis{Matrix::Identity(2, 2), unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1)};
  StarAlgebra alg(2, basis, true);
  Vector c = alg.decompose(Matrix::Identity(2, 2));
  CHECK(std::abs(c(0) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(c(1)) < 1e-12);

  // p(1/2) against {I, H} with H = [[1,1],[1,1]]/2; oracle: 2-unknown solve
  Matrix h(2, 2);
  h << 0.5, 0.5, 0.5, 0.5;
  StarAlgebra alg2(2, {Matrix::Identity(2, 2), h}, true);
  Matrix p = p_of_r(0.5);
  Matrix lsq(4, 2);
  lsq.col(0) = vectorize(Matrix::Identity(2, 2));
  lsq.col(1) = vectorize(h);
  Vector oracle = (lsq.adjoint() * lsq).fullPivLu().solve(lsq.adjoint() * vectorize(p));
  CHECK(std::abs(oracle(0) - Complex(0.0)) < 1e-14);
  CHECK(std::abs(oracle(1) - Complex(1.0)) < 1e-14);
  Vector got = alg2.decompose(p);
  CHECK((got - oracle).norm() < 1e-12);

  // off-diagonal matrix escapes the diagonal algebra
  AlgebraPtr diag = diagonal_algebra(2);
  CHECK_THROWS_AS(diag->decompose(unit_matrix(2, 0, 1)), NotInSpan);
  CHECK_FALSE(diag->contains(unit_matrix(2, 0, 1)));
}

TEST_CASE("constructor rejects broken bases") {
  // linearly dependent
  CHECK_THROWS_AS(StarAlgebra(2, {Matrix::Identity(2, 2), Matrix(2.0 * Matrix::Identity(2, 2))},
                              true),
                  InvalidAlgebra);
  // not *-closed
  CHECK_THROWS_AS(StarAlgebra(2, {Matrix::Identity(2, 2), unit_matrix(2, 0, 1)}, true),
                  InvalidAlgebra);
  // not multiplicatively closed: diag(0,1,2) squares outside span{I, x}
  Matrix x = Matrix::Zero(3, 3);
  x(1, 1) = 1.0;
  x(2, 2) = 2.0;
  CHECK_THROWS_AS(StarAlgebra(3, {Matrix::Identity(3, 3), x}, true), InvalidAlgebra);
  // unital flag with a non-unital span
  CHECK_THROWS_AS(StarAlgebra(2, {unit_matrix(2, 0, 0)}, true), InvalidAlgebra);
}

TEST_CASE("generated algebras") {
  Matrix p = p_of_r(0.3);
  Matrix q = Matrix::Identity(2, 2) - p;
  StarAlgebra b = StarAlgebra::generated_by(2, {p, q}, true);
  CHECK(b.dim() == 2);
  CHECK(b.contains(p));
  b.validate();

  StarAlgebra trivial = StarAlgebra::generated_by(3, {}, true);
  CHECK(trivial.dim() == 1);
  CHECK(trivial.contains(Matrix::Identity(3, 3)));

  // E12 generates the full 2x2 matrix algebra; all four units must appear
  StarAlgebra m2 = StarAlgebra::generated_by(2, {unit_matrix(2, 0, 1)}, false);
  CHECK(m2.dim() == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m2.contains(unit_matrix(2, i, j)));
}

TEST_CASE("trace conditional expectation") {
  AlgebraPtr m2 = full_matrix_algebra(2);
  TraceExpectation full(m2, m2);
  Rng rng(3);
  Matrix x = rng.cgaussian_matrix(2, 2);
  CHECK((full.apply(x) - x).norm() < 1e-12);

  AlgebraPtr diag = diagonal_algebra(2);
  TraceExpectation onto_diag(diag, m2);
  Matrix y = rng.cgaussian_matrix(2, 2);
  Matrix projected = onto_diag.apply(y);
  CHECK(std::abs(projected(0, 1)) < 1e-14);
  CHECK(std::abs(projected(1, 0)) < 1e-14);
  CHECK(std::abs(projected(0, 0) - y(0, 0)) < 1e-14);

  AlgebraPtr scalars = scalar_algebra(3);
  AlgebraPtr m3 = full_matrix_algebra(3);
  TraceExpectation onto_scalars(scalars, m3);
  Matrix z = rng.cgaussian_matrix(3, 3);
  Matrix expected = (z.trace() / 3.0) * Matrix::Identity(3, 3);
  CHECK((onto_scalars.apply(z) - expected).norm() < 1e-12);

  // bimodule property on random triples
  for (int s = 0; s < 20; ++s) {
    Matrix a = diag->from_coords(rng.cgaussian_vector(2));
    Matrix b = diag->from_coords(rng.cgaussian_vector(2));
    Matrix w = rng.cgaussian_matrix(2, 2);
    CHECK((onto_diag.apply(a * w * b) - a * onto_diag.apply(w) * b).norm() < 1e-10);
  }

  // both algebras must be unital with a shared identity
  auto e11_alg = std::make_shared<StarAlgebra>(
      2, std::vector<Matrix>{unit_matrix(2, 0, 0)}, false);
  CHECK_THROWS_AS(TraceExpectation(e11_alg, m2), BimoduleViolation);
}

TEST_CASE("star homomorphisms") {
  AlgebraPtr diag = diagonal_algebra(2);
  AlgebraPtr m2 = full_matrix_algebra(2);
  Matrix coeff(4, 2);
  coeff.col(0) = m2->decompose(unit_matrix(2, 0, 0));
  coeff.col(1) = m2->decompose(unit_matrix(2, 1, 1));
  StarHom inc(diag, m2, coeff, true);
  CHECK((inc.apply(diag->basis(0)) - unit_matrix(2, 0, 0)).norm() < 1e-14);

  // collapsing both diagonal units onto the identity is not multiplicative
  Matrix bad(4, 2);
  bad.col(0) = m2->decompose(Matrix::Identity(2, 2));
  bad.col(1) = m2->decompose(Matrix::Identity(2, 2));
  CHECK_THROWS_AS(StarHom(diag, m2, bad, true), InvalidHomomorphism);

  AlgebraPtr img = image_algebra(inc);
  CHECK(img->dim() == 2);
  CHECK(img->contains(unit_matrix(2, 0, 0)));
}

TEST_CASE("algebra json round trip") {
  AlgebraPtr diag = diagonal_algebra(3);
  Json j = algebra_to_json(*diag);
  AlgebraPtr back = algebra_from_json(Json::parse(j.dump()));
  CHECK(back->dim() == 3);
  CHECK(back->ambient_dim() == 3);
  CHECK(back->unital());
  for (int k = 0; k < 3; ++k) CHECK((back->basis(k) - diag->basis(k)).norm() == 0.0);
}

TEST_CASE("fundamental data json round trip") {
  Rng rng(19);
  FundamentalData fd = random_fundamental_data(4, rng);
  Json j = fundamental_data_to_json(fd);
  FundamentalData back = fundamental_data_from_json(Json::parse(j.dump()));
  CHECK((back.pi - fd.pi).norm() < 1e-12);
  CHECK((back.A->from_coords(back.h) - fd.A->from_coords(fd.h)).norm() < 1e-12);
}

TEST_CASE("adjoint and multiply in coordinates") {
  AlgebraPtr m2 = full_matrix_algebra(2);
  Rng rng(11);
  for (int s = 0; s < 20; ++s) {
    Vector u = rng.cgaussian_vector(4), v = rng.cgaussian_vector(4);
    Matrix mu = m2->from_coords(u), mv = m2->from_coords(v);
    CHECK((m2->from_coords(m2->multiply(u, v)) - mu * mv).norm() < 1e-12);
    CHECK((m2->from_coords(m2->adjoint_coords(u)) - mu.adjoint()).norm() < 1e-12);
  }
}

TEST_SUITE_END();
