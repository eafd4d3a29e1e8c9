#pragma once

#include "alloy/common.hpp"

namespace alloy {

/// Largest singular value; equals the square root of the largest
/// eigenvalue of x*x.  Throws std::invalid_argument on non-square input.
double operator_norm(const Matrix& x);

/// Frobenius (Hilbert-Schmidt) norm.
inline double hs_norm(const Matrix& x) { return x.norm(); }

bool is_hermitian(const Matrix& x, double tol = kDefaultTol);

inline Matrix hermitian_part(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

/// Smallest eigenvalue of the Hermitian part of x.
double min_hermitian_eigenvalue(const Matrix& x);

/// Eigenvalues of a Hermitian matrix, ascending.  Throws NotHermitian.
RealVector hermitian_spectrum(const Matrix& x, double tol = kDefaultTol);

/// Functional calculus x^exponent for Hermitian positive-semidefinite x,
/// exponent restricted to {+1/2, -1/2, -1}.  Negative exponents require
/// the smallest eigenvalue to exceed tol.
Matrix psd_power(const Matrix& x, double exponent, double tol = kDefaultTol);

Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, int rows, int cols);

/// Numerical rank: count of singular values above tol * (largest).
int numerical_rank(const Matrix& m, double tol = kDefaultTol);

double smallest_singular_value(const Matrix& m);

/// Condition number sigma_max / sigma_min (infinity if singular).
double condition_number(const Matrix& m);

}  // namespace alloy
