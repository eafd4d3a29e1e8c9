#include "alloy/matrix_ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace alloy {

double operator_norm(const Matrix& x) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("operator_norm: matrix must be square");
  }
  if (x.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).norm() <= scaled_tol(tol, x.norm());
}

double min_hermitian_eigenvalue(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x));
  return es.eigenvalues().minCoeff();
}

RealVector hermitian_spectrum(const Matrix& x, double tol) {
  if (!is_hermitian(x, tol)) throw NotHermitian("hermitian_spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x));
  return es.eigenvalues();
}

Matrix psd_power(const Matrix& x, double exponent, double tol) {
  if (exponent != 0.5 && exponent != -0.5 && exponent != -1.0) {
    throw std::invalid_argument("psd_power: exponent must be one of +1/2, -1/2, -1");
  }
  if (!is_hermitian(x, tol)) throw NotHermitian("psd_power: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x));
  RealVector lam = es.eigenvalues();
  if (exponent < 0.0 && lam.minCoeff() <= tol) {
    throw NotPositive("psd_power: eigenvalue below tolerance for negative exponent");
  }
  RealVector powered(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    // clamp round-off negatives for the square root
    double v = (exponent == 0.5 && lam(i) < 0.0 && lam(i) > -tol) ? 0.0 : lam(i);
    if (exponent == 0.5 && v < 0.0) {
      throw NotPositive("psd_power: negative eigenvalue for square root");
    }
    powered(i) = std::pow(v, exponent);
  }
  return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().adjoint();
}

Vector vectorize(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvectorize(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw std::invalid_argument("unvectorize: size mismatch");
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

namespace {

RealVector singular_values_of(const Matrix& m) {
  // divide-and-conquer for large matrices, Jacobi for small ones
  if (std::max(m.rows(), m.cols()) > 64) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

}  // namespace

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  RealVector sv = singular_values_of(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

double smallest_singular_value(const Matrix& m) {
  RealVector sv = singular_values_of(m);
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

double condition_number(const Matrix& m) {
  RealVector sv = singular_values_of(m);
  if (sv.size() == 0) return 0.0;
  double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace alloy
