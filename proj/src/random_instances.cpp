#include "alloy/random_instances.hpp"

namespace alloy {

namespace {

// Self-adjoint unitary of the form u diag(+-1) u^*.
Matrix random_reflection(int n, Rng& rng) {
  Matrix u = rng.unitary(n);
  RealVector signs(n);
  bool mixed = false;
  for (int i = 0; i < n; ++i) {
    signs(i) = rng.uniform() < 0.5 ? 1.0 : -1.0;
    if (i > 0 && signs(i) != signs(0)) mixed = true;
  }
  if (!mixed && n > 1) signs(0) = -signs(0);
  return u * signs.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace

Vector random_hermitian_coords(const StarAlgebra& alg, Rng& rng) {
  Vector c = rng.cgaussian_vector(alg.dim());
  Matrix x = alg.from_coords(c);
  return alg.decompose(hermitian_part(x));
}

Matrix random_inner_star_automorphism(const StarAlgebra& alg, Rng& rng) {
  // exp-free construction: Cayley transform of a Hermitian element stays in
  // the algebra and is unitary
  Matrix h = alg.from_coords(random_hermitian_coords(alg, rng));
  Matrix i_h = Complex(0.0, 1.0) * h;
  Matrix num = alg.identity() + i_h;
  Matrix den = (alg.identity() - i_h).partialPivLu().inverse();
  Matrix u = num * den;
  return conjugation_operator(alg, u);
}

Matrix random_positive_conjugation(const StarAlgebra& alg, Rng& rng, double bound) {
  Matrix h = alg.from_coords(random_hermitian_coords(alg, rng));
  double norm = operator_norm(h);
  if (norm > 0.0) h *= (std::log(bound) / norm);
  // exponential via Hermitian eigendecomposition; stays in the algebra
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector lam = es.eigenvalues();
  RealVector ex(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) ex(i) = std::exp(lam(i));
  Matrix s = es.eigenvectors() * ex.asDiagonal() * es.eigenvectors().adjoint();
  return conjugation_operator(alg, s);
}

FundamentalData random_fundamental_data(int dimA, Rng& rng, double tol) {
  AlgebraPtr A;
  Matrix v;  // self-adjoint unitary implementing pi on the ambient space

  switch (dimA) {
    case 1: {
      A = scalar_algebra(1, tol);
      v = Matrix::Identity(1, 1);
      break;
    }
    case 2: {
      A = diagonal_algebra(2, tol);
      v = Matrix::Zero(2, 2);
      v(0, 1) = 1.0;
      v(1, 0) = 1.0;
      break;
    }
    case 4: {
      if (rng.uniform() < 0.5) {
        // C^4 with two swapped pairs
        A = diagonal_algebra(4, tol);
        v = Matrix::Zero(4, 4);
        v(0, 1) = v(1, 0) = 1.0;
        v(2, 3) = v(3, 2) = 1.0;
      } else {
        // M_2 with a random reflection
        A = full_matrix_algebra(2, tol);
        v = random_reflection(2, rng);
      }
      break;
    }
    case 8: {
      // M_2 + M_2 with the factor swap twisted by a random unitary
      A = block_sum_algebra({2, 2}, tol);
      Matrix u = rng.unitary(2);
      v = Matrix::Zero(4, 4);
      v.block(0, 2, 2, 2) = u;
      v.block(2, 0, 2, 2) = u.adjoint();
      break;
    }
    case 16: {
      // two swapped pairs of 2x2 factors
      A = block_sum_algebra({2, 2, 2, 2}, tol);
      Matrix u1 = rng.unitary(2);
      Matrix u2 = rng.unitary(2);
      v = Matrix::Zero(8, 8);
      v.block(0, 2, 2, 2) = u1;
      v.block(2, 0, 2, 2) = u1.adjoint();
      v.block(4, 6, 2, 2) = u2;
      v.block(6, 4, 2, 2) = u2.adjoint();
      break;
    }
    default:
      throw std::invalid_argument("random_fundamental_data: dimA must be 1, 2, 4, 8 or 16");
  }

  Matrix pi = conjugation_operator(*A, v);

  // h = 1/2 + d with pi(d) = -d exactly, spectrum inside (0.05, 0.95)
  Vector d0 = random_hermitian_coords(*A, rng);
  Vector d = 0.5 * (d0 - pi * d0);
  double dn = operator_norm(A->from_coords(d));
  double radius = rng.uniform(0.05, 0.45);
  Vector h = 0.5 * A->identity_coords();
  if (dn > tol) h += (radius / dn) * d;

  FundamentalData fd{A, pi, h};
  fd.validate();
  return fd;
}

}  // namespace alloy
