#include "alloy/nonstrict.hpp"

namespace alloy {

Matrix p_of_r(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("p_of_r: r must lie in the open interval (0, 1)");
  }
  double s = std::sqrt(r - r * r);
  Matrix p(2, 2);
  p << r, s, s, 1.0 - r;
  return p;
}

SingleSquare single_square(double r) {
  AlgebraPtr A = diagonal_algebra(2);
  AlgebraPtr X = full_matrix_algebra(2);
  Matrix emb(4, 2);
  emb.setZero();
  emb.col(0) = X->decompose(A->basis(0));
  emb.col(1) = X->decompose(A->basis(1));
  StarHom i(A, X, emb, true);

  Matrix p = p_of_r(r);
  TwoPointAlloy alloy(A, X, i, p);

  AlgebraPtr B = std::make_shared<StarAlgebra>(
      2, std::vector<Matrix>{p, Matrix(Matrix::Identity(2, 2) - p)}, true, X->tol());
  Matrix jcoeff(4, 2);
  jcoeff.col(0) = X->decompose(B->basis(0));
  jcoeff.col(1) = X->decompose(B->basis(1));
  StarHom j(B, X, jcoeff, true);

  return SingleSquare{std::move(alloy), BlendQuintuple(A, B, X, i, j)};
}

std::pair<Matrix, Matrix> single_square_intrinsic(double r) {
  SingleSquare sq = single_square(r);
  auto [E, F] = compute_intrinsic_pair(sq.alloy);

  // closed forms: columns of the coefficient matrices over {e11, e22}
  Matrix E_expect(2, 2), F_expect(2, 2);
  E_expect << r, 1.0 - r, r, 1.0 - r;
  F_expect << 1.0 - r, r, 1.0 - r, r;
  const double tol = sq.alloy.tol();
  if ((E - E_expect).norm() > scaled_tol(tol, 1.0) ||
      (F - F_expect).norm() > scaled_tol(tol, 1.0)) {
    throw MultiplicativityViolation("single square: intrinsic pair deviates from closed form");
  }
  return {E, F};
}

TruncatedBlend truncated_blend(const std::vector<double>& r_values) {
  if (r_values.empty()) throw std::invalid_argument("truncated_blend: empty sequence");
  const int N = static_cast<int>(r_values.size());
  const int n = 2 * N;
  const double tol = kDefaultTol;

  // A: all diagonal matrices; X: block-diagonal 2x2 blocks
  AlgebraPtr A = diagonal_algebra(n);
  std::vector<int> blocks(static_cast<size_t>(N), 2);
  AlgebraPtr X = block_sum_algebra(blocks, tol);

  Matrix emb(X->dim(), A->dim());
  for (int k = 0; k < A->dim(); ++k) emb.col(k) = X->decompose(A->basis(k));
  StarHom i(A, X, emb, true);

  Matrix P = Matrix::Zero(n, n);
  for (int m = 0; m < N; ++m) P.block(2 * m, 2 * m, 2, 2) = p_of_r(r_values[static_cast<size_t>(m)]);

  TwoPointAlloy alloy(A, X, i, P);

  AlgebraPtr B = std::make_shared<StarAlgebra>(
      n, std::vector<Matrix>{P, Matrix(Matrix::Identity(n, n) - P)}, true, tol);
  Matrix jcoeff(X->dim(), 2);
  jcoeff.col(0) = X->decompose(B->basis(0));
  jcoeff.col(1) = X->decompose(B->basis(1));
  StarHom j(B, X, jcoeff, true);
  BlendQuintuple blend(A, B, X, i, j);

  // blockwise proof identity: P a = E(a) P + (id - F)(a) Q with the closed
  // per-block forms of E and F
  Matrix Q = Matrix::Identity(n, n) - P;
  for (int k = 0; k < A->dim(); ++k) {
    Matrix a = A->basis(k);
    Matrix Ea = Matrix::Zero(n, n);
    Matrix Fa = Matrix::Zero(n, n);
    for (int m = 0; m < N; ++m) {
      double r = r_values[static_cast<size_t>(m)];
      Complex x = a(2 * m, 2 * m), y = a(2 * m + 1, 2 * m + 1);
      Complex e_val = r * x + (1.0 - r) * y;
      Complex f_val = (1.0 - r) * x + r * y;
      Ea.block(2 * m, 2 * m, 2, 2) = e_val * Matrix::Identity(2, 2);
      Fa.block(2 * m, 2 * m, 2, 2) = f_val * Matrix::Identity(2, 2);
    }
    Matrix lhs = P * a;
    Matrix rhs = Ea * P + (a - Fa) * Q;
    if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm())) {
      throw MultiplicativityViolation("truncated blend: blockwise identity fails");
    }
  }

  return TruncatedBlend{N,       r_values,       std::move(alloy),
                        std::move(blend), std::move(P), strictness_decay(r_values)};
}

std::vector<DecayRow> strictness_decay(const std::vector<double>& r_values) {
  std::vector<DecayRow> rows;
  rows.reserve(r_values.size());
  double running = std::numeric_limits<double>::infinity();
  for (size_t m = 0; m < r_values.size(); ++m) {
    const double r = r_values[m];
    // the witness formula extends continuously to the boundary value r = 1
    if (!(r > 0.0 && r <= 1.0)) {
      throw std::domain_error("strictness_decay: r must lie in (0, 1]");
    }
    double s = std::sqrt(std::max(r - r * r, 0.0));
    Matrix block(2, 2);
    block << r, s, s, 1.0 - r;
    Matrix witness(2, 2);
    witness << 1, 0, 0, 0;  // a_m = diag(1, 0), zero in every other block
    double norm = operator_norm(Matrix(witness * block));
    running = std::min(running, norm);
    rows.push_back(DecayRow{static_cast<int>(m) + 1, norm, running});
  }
  return rows;
}

std::vector<double> preset_sequence(const std::string& name, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int m = 1; m <= n; ++m) {
    if (name == "harmonic") {
      out.push_back(1.0 / m);
    } else if (name == "geometric") {
      out.push_back(std::pow(2.0, -m));
    } else if (name == "constant") {
      out.push_back(0.5);
    } else {
      throw std::invalid_argument("unknown preset: " + name);
    }
  }
  return out;
}

}  // namespace alloy
