#include "alloy/auto_polar.hpp"

#include <Eigen/Eigenvalues>

namespace alloy {

namespace {

Vector unit(int dim, int k) {
  Vector e = Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

constexpr double kEigvecConditionLimit = 1e8;

// Denman-Beavers iteration for the principal matrix square root.
Matrix newton_sqrt(const Matrix& m, double tol) {
  Matrix y = m;
  Matrix z = Matrix::Identity(m.rows(), m.cols());
  for (int it = 0; it < 100; ++it) {
    Matrix yn = 0.5 * (y + z.partialPivLu().inverse());
    Matrix zn = 0.5 * (z + y.partialPivLu().inverse());
    y = yn;
    z = zn;
    if ((y * y - m).norm() <= scaled_tol(tol, m.norm())) return y;
  }
  throw DefectiveOperator("matrix square root iteration did not converge");
}

}  // namespace

void AlgebraAutomorphism::validate() const {
  const double tol = alg->tol();
  const int d = alg->dim();
  if (op.rows() != d || op.cols() != d) {
    throw std::invalid_argument("automorphism: operator shape mismatch");
  }
  if (numerical_rank(op, tol) != d) {
    throw MultiplicativityViolation("automorphism: operator is not invertible");
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Vector lhs = op * alg->multiply(unit(d, i), unit(d, j));
      Vector rhs = alg->multiply(op * unit(d, i), op * unit(d, j));
      if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm() + rhs.norm())) {
        throw MultiplicativityViolation("automorphism: not multiplicative on basis pair");
      }
    }
  }
}

bool AlgebraAutomorphism::is_star_automorphism() const {
  return (star_conjugate(*alg, op) - op).norm() <= scaled_tol(alg->tol(), op.norm());
}

Matrix star_conjugate(const StarAlgebra& alg, const Matrix& op) {
  const Matrix& s = alg.star_matrix();
  return s * op.conjugate() * s.conjugate();
}

Matrix dual(const StarAlgebra& alg, const Matrix& op) {
  return star_conjugate(alg, op).partialPivLu().inverse();
}

Matrix conjugation_operator(const StarAlgebra& alg, const Matrix& s) {
  Matrix s_inv = s.partialPivLu().inverse();
  Matrix op(alg.dim(), alg.dim());
  for (int k = 0; k < alg.dim(); ++k) {
    op.col(k) = alg.decompose(s * alg.basis(k) * s_inv);
  }
  return op;
}

PolarDecomposition polar_decompose(const AlgebraAutomorphism& rho) {
  rho.validate();
  const auto& alg = *rho.alg;
  const double tol = alg.tol();
  Matrix pos = dual(alg, rho.op) * rho.op;  // gamma^2, a positive automorphism

  Eigen::ComplexEigenSolver<Matrix> ces(pos);
  if (ces.info() != Eigen::Success) {
    throw DefectiveOperator("polar decomposition: eigensolver failed");
  }
  for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i) {
    if (ces.eigenvalues()(i).real() <= tol) {
      throw SpectrumOnCut("polar decomposition: eigenvalue off the open right half-plane");
    }
  }

  Matrix gamma;
  double cond = condition_number(ces.eigenvectors());
  if (std::isfinite(cond) && cond <= kEigvecConditionLimit) {
    Vector sq(ces.eigenvalues().size());
    for (Eigen::Index i = 0; i < sq.size(); ++i) sq(i) = std::sqrt(ces.eigenvalues()(i));
    gamma = ces.eigenvectors() * sq.asDiagonal() *
            ces.eigenvectors().partialPivLu().inverse();
  } else {
    gamma = newton_sqrt(pos, tol);
  }
  if ((gamma * gamma - pos).norm() > scaled_tol(std::sqrt(tol), pos.norm())) {
    gamma = newton_sqrt(pos, tol);
  }

  PolarDecomposition out;
  out.gamma_part = AlgebraAutomorphism{rho.alg, gamma};
  out.pi_part = AlgebraAutomorphism{rho.alg, rho.op * gamma.partialPivLu().inverse()};

  out.gamma_part.validate();
  out.pi_part.validate();
  if (!out.pi_part.is_star_automorphism()) {
    throw DefectiveOperator("polar decomposition: pi part is not a *-automorphism");
  }
  Matrix gd = dual(alg, gamma);
  if ((gd - gamma).norm() > scaled_tol(std::sqrt(tol), gamma.norm())) {
    throw DefectiveOperator("polar decomposition: gamma part is not self-dual");
  }
  if ((out.pi_part.op * gamma - rho.op).norm() > scaled_tol(tol, rho.op.norm())) {
    throw DefectiveOperator("polar decomposition: parts do not compose to the input");
  }
  return out;
}

PhiPolarReport verify_Phi_polar(const TwoPointAlloy& t, const IntrinsicData& d) {
  PhiPolarReport rep;
  const auto& X = t.X();
  const double tol = t.tol();
  const int dx = t.dimX();

  AlgebraAutomorphism Phi{t.X_ptr(), d.PhiX};
  rep.residuals["Phi_self_dual"] = (dual(X, d.PhiX) - d.PhiX).norm();

  PolarDecomposition pd = polar_decompose(Phi);
  rep.PiX = pd.pi_part.op;
  rep.GammaX = pd.gamma_part.op;

  rep.residuals["Pi_involution"] = (rep.PiX * rep.PiX - Matrix::Identity(dx, dx)).norm();
  rep.residuals["Pi_Gamma_commute"] = (rep.PiX * rep.GammaX - rep.GammaX * rep.PiX).norm();

  Vector pc = X.decompose(t.p());
  Vector qc = X.decompose(t.q());
  rep.residuals["Gamma_fixes_p"] = (rep.GammaX * pc - pc).norm();
  rep.residuals["Gamma_fixes_q"] = (rep.GammaX * qc - qc).norm();
  rep.residuals["Pi_swaps_p_q"] =
      std::max((rep.PiX * pc - qc).norm(), (rep.PiX * qc - pc).norm());

  // both parts must preserve the embedded copy of A
  const Matrix& emb = t.embedA().coeff();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(emb);
  rep.pi_A = cod.solve(rep.PiX * emb);
  rep.gamma_A = cod.solve(rep.GammaX * emb);
  rep.residuals["Pi_preserves_A"] = (rep.PiX * emb - emb * rep.pi_A).norm();
  rep.residuals["Gamma_preserves_A"] = (rep.GammaX * emb - emb * rep.gamma_A).norm();

  // restrictions give the polar decomposition of phi
  rep.residuals["phi_polar_product"] = (rep.pi_A * rep.gamma_A - d.phi).norm();
  AlgebraAutomorphism phi{t.A_ptr(), d.phi};
  PolarDecomposition pd_phi = polar_decompose(phi);
  rep.residuals["phi_polar_matches_restriction"] =
      std::max((pd_phi.pi_part.op - rep.pi_A).norm(), (pd_phi.gamma_part.op - rep.gamma_A).norm());

  double worst = 0.0;
  for (const auto& [key, value] : rep.residuals) worst = std::max(worst, value);
  rep.ok = worst <= scaled_tol(std::sqrt(tol), 1.0);
  return rep;
}

}  // namespace alloy
