#include <doctest.h>

#include "alloy/blend.hpp"
#include "alloy/nonstrict.hpp"
#include "alloy/rng.hpp"

using namespace alloy;

TEST_SUITE_BEGIN("blendcheck");

TEST_CASE("one-dimensional quintuple") {
  AlgebraPtr c = scalar_algebra(1);
  StarHom id = StarHom::identity(c);
  BlendQuintuple q(c, c, c, id, id);
  Matrix m = circledast_matrix(q, ProductOrder::ij);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  CHECK(std::abs(m(0, 0) - Complex(1.0)) < 1e-14);
  BlendVerdict v = classify(q);
  CHECK(v.is_blend);
  CHECK(v.is_alloy);
  CHECK(v.is_strict);
}

TEST_CASE("diagonal square is a blend and an alloy") {
  for (double r : {0.3, 0.5, 0.77}) {
    SingleSquare sq = single_square(r);
    BlendVerdict v = classify(sq.quintuple);
    CHECK(v.rank_ij == 4);
    CHECK(v.rank_ji == 4);
    CHECK(v.is_blend);
    CHECK(v.is_alloy);

    // independent oracle: assemble the 4x4 product matrix directly and rank
    // it with a rank-revealing LU
    Matrix cols(4, 4);
    int col = 0;
    for (int k = 0; k < 2; ++k) {
      Matrix a = sq.quintuple.X->from_coords(sq.quintuple.i.coeff().col(k));
      for (int l = 0; l < 2; ++l) {
        Matrix b = sq.quintuple.X->from_coords(sq.quintuple.j.coeff().col(l));
        cols.col(col++) = vectorize(Matrix(a * b));
      }
    }
    Eigen::FullPivLU<Matrix> lu(cols);
    lu.setThreshold(1e-9);
    CHECK(lu.rank() == 4);
  }
}

TEST_CASE("equal embeddings give a blend that is not an alloy") {
  AlgebraPtr c2 = diagonal_algebra(2);
  StarHom id = StarHom::identity(c2);
  BlendQuintuple q(c2, c2, c2, id, id);
  BlendVerdict v = classify(q);
  CHECK(v.rank_ij == 2);
  CHECK(v.dim_X == 2);
  CHECK(v.dim_A_tensor_B == 4);
  CHECK(v.is_blend);
  CHECK_FALSE(v.is_alloy);
}

TEST_CASE("rank symmetry of the two product maps") {
  for (double r : {0.2, 0.6}) {
    SingleSquare sq = single_square(r);
    BlendVerdict v = classify(sq.quintuple);
    CHECK(v.rank_ij == v.rank_ji);
  }
}

TEST_CASE("verdict is invariant under a change of basis of X") {
  SingleSquare sq = single_square(0.4);
  BlendVerdict before = classify(sq.quintuple);

  // recombine the basis of X by a random invertible matrix
  Rng rng(5);
  Matrix t = rng.cgaussian_matrix(4, 4) + 3.0 * Matrix::Identity(4, 4);
  std::vector<Matrix> new_basis;
  for (int k = 0; k < 4; ++k) {
    Matrix nb = Matrix::Zero(2, 2);
    for (int l = 0; l < 4; ++l) nb += t(l, k) * sq.quintuple.X->basis(l);
    new_basis.push_back(nb);
  }
  auto X2 = std::make_shared<StarAlgebra>(2, new_basis, true);
  Matrix icoeff(4, 2), jcoeff(4, 2);
  for (int k = 0; k < 2; ++k) {
    icoeff.col(k) = X2->decompose(sq.quintuple.X->from_coords(sq.quintuple.i.coeff().col(k)));
    jcoeff.col(k) = X2->decompose(sq.quintuple.X->from_coords(sq.quintuple.j.coeff().col(k)));
  }
  BlendQuintuple q2(sq.quintuple.A, sq.quintuple.B, X2,
                    StarHom(sq.quintuple.A, X2, icoeff, true),
                    StarHom(sq.quintuple.B, X2, jcoeff, true));
  BlendVerdict after = classify(q2);
  CHECK(before.is_blend == after.is_blend);
  CHECK(before.is_alloy == after.is_alloy);
  CHECK(before.rank_ij == after.rank_ij);

  // recombining the bases of A and B leaves the verdict unchanged as well
  Matrix ta(2, 2), tb(2, 2);
  ta << 1.0, 1.0, 1.0, -1.0;
  tb << 2.0, 0.5, 1.0, 1.0;
  std::vector<Matrix> abasis, bbasis;
  for (int k = 0; k < 2; ++k) {
    Matrix na = Matrix::Zero(2, 2), nb = Matrix::Zero(2, 2);
    for (int l = 0; l < 2; ++l) {
      na += ta(l, k) * sq.quintuple.A->basis(l);
      nb += tb(l, k) * sq.quintuple.B->basis(l);
    }
    abasis.push_back(na);
    bbasis.push_back(nb);
  }
  auto A2 = std::make_shared<StarAlgebra>(2, abasis, true);
  auto B2 = std::make_shared<StarAlgebra>(2, bbasis, true);
  Matrix ic2(4, 2), jc2(4, 2);
  for (int k = 0; k < 2; ++k) {
    ic2.col(k) = sq.quintuple.X->decompose(A2->basis(k));
    jc2.col(k) = sq.quintuple.X->decompose(B2->basis(k));
  }
  BlendQuintuple q3(A2, B2, sq.quintuple.X,
                    StarHom(A2, sq.quintuple.X, ic2, true),
                    StarHom(B2, sq.quintuple.X, jc2, true));
  BlendVerdict rotated = classify(q3);
  CHECK(before.is_blend == rotated.is_blend);
  CHECK(before.is_alloy == rotated.is_alloy);
}

TEST_CASE("morphisms and blend-to-alloy rigidity") {
  SingleSquare sq = single_square(0.25);
  StarHom idX = StarHom::identity(sq.quintuple.X);
  MorphismReport rep = check_morphism(sq.quintuple, sq.quintuple, idX);
  CHECK(rep.intertwines);
  CHECK(rep.rigidity_applies);  // the square is both a blend and an alloy
  CHECK(rep.phi_bijective);
  CHECK(rep.rigidity_holds);

  // zeroing a basis image does not even give a homomorphism on a full
  // matrix algebra
  Matrix broken = Matrix::Identity(4, 4);
  broken(0, 0) = 0.0;
  CHECK_THROWS_AS(StarHom(sq.quintuple.X, sq.quintuple.X, broken, true),
                  InvalidHomomorphism);

  // a genuine automorphism of X that moves the embedded copy of A fails to
  // intertwine
  Matrix u(2, 2);
  u << 0, 1, 1, 0;
  Matrix swap_coeff(4, 4);
  for (int k = 0; k < 4; ++k) {
    swap_coeff.col(k) = sq.quintuple.X->decompose(u * sq.quintuple.X->basis(k) * u);
  }
  StarHom swap_hom(sq.quintuple.X, sq.quintuple.X, swap_coeff, true);
  CHECK_THROWS_AS(check_morphism(sq.quintuple, sq.quintuple, swap_hom),
                  IntertwiningViolation);
}

TEST_SUITE_END();
