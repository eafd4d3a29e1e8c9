#pragma once

#include <memory>
#include <vector>

#include "alloy/matrix_ops.hpp"

namespace alloy {

class StarAlgebra;
using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

// A *-subalgebra of the n x n complex matrices, given by an ordered basis.
// Immutable after construction; construction validates linear independence,
// multiplicative closure, *-closure and (when flagged) unitality.
class StarAlgebra {
 public:
  StarAlgebra(int ambient_dim, std::vector<Matrix> basis, bool unital,
              double tol = kDefaultTol);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool unital() const { return unital_; }
  double tol() const { return tol_; }
  const Matrix& basis(int k) const { return basis_[static_cast<size_t>(k)]; }
  const std::vector<Matrix>& basis() const { return basis_; }

  Matrix from_coords(const Vector& c) const;

  /// Least-squares coefficients of x against the basis; throws NotInSpan
  /// when the residual exceeds tol * (1 + |x|).
  Vector decompose(const Matrix& x) const;
  Vector decompose(const Matrix& x, double& residual) const;
  bool contains(const Matrix& x) const;

  /// Coordinates of the product of two elements given in coordinates.
  Vector multiply(const Vector& u, const Vector& v) const;
  /// Coordinates of the adjoint of the element with coordinates u.
  Vector adjoint_coords(const Vector& u) const;

  /// Matrix S with coords(x^*) = S * conj(coords(x)).
  const Matrix& star_matrix() const { return star_; }

  Vector identity_coords() const;
  Matrix identity() const { return Matrix::Identity(n_, n_); }

  /// Re-checks all closure invariants; exhaustive on basis pairs up to
  /// dimension 32, seeded random sampling beyond.
  void validate() const;

  double smallest_basis_singular_value() const;

  /// Smallest *-closed, multiplicatively closed span containing the
  /// generators (and the identity if unital).  Basis comes out orthonormal
  /// in the Frobenius inner product.
  static StarAlgebra generated_by(int ambient_dim, const std::vector<Matrix>& gens,
                                  bool unital, double tol = kDefaultTol);

 private:
  int n_;
  std::vector<Matrix> basis_;
  bool unital_;
  double tol_;
  Matrix vec_basis_;  // n^2 x dim, columns are vectorized basis elements
  Eigen::ColPivHouseholderQR<Matrix> qr_;
  Matrix star_;
  Vector id_coords_;
};

// Common ambient models used throughout the test suites and generators.
AlgebraPtr diagonal_algebra(int d, double tol = kDefaultTol);
AlgebraPtr full_matrix_algebra(int n, double tol = kDefaultTol);
AlgebraPtr block_sum_algebra(const std::vector<int>& block_sizes, double tol = kDefaultTol);
AlgebraPtr scalar_algebra(int ambient_dim, double tol = kDefaultTol);

// A *-homomorphism between matrix *-algebras, stored as the coefficient
// matrix sending domain coordinates to codomain coordinates.
class StarHom {
 public:
  StarHom(AlgebraPtr domain, AlgebraPtr codomain, Matrix coeff, bool unital);

  const StarAlgebra& domain() const { return *dom_; }
  const StarAlgebra& codomain() const { return *cod_; }
  const AlgebraPtr& domain_ptr() const { return dom_; }
  const AlgebraPtr& codomain_ptr() const { return cod_; }
  const Matrix& coeff() const { return coeff_; }
  bool unital() const { return unital_; }

  Vector apply_coords(const Vector& u) const { return coeff_ * u; }
  Matrix apply(const Matrix& x) const;

  /// Multiplicative / *-preserving / unital checks; throws InvalidHomomorphism.
  void validate() const;

  static StarHom identity(const AlgebraPtr& alg);

 private:
  AlgebraPtr dom_, cod_;
  Matrix coeff_;
  bool unital_;
};

/// The image algebra of a homomorphism, as a subalgebra of the codomain's
/// ambient space (basis orthonormalized).
AlgebraPtr image_algebra(const StarHom& f);

// Orthogonal projection of X onto a *-subalgebra with respect to the
// normalized trace inner product; it is the trace-preserving conditional
// expectation, faithful by construction.
class TraceExpectation {
 public:
  TraceExpectation(AlgebraPtr sub, AlgebraPtr whole);

  Matrix apply(const Matrix& x) const;
  const StarAlgebra& sub() const { return *sub_; }
  const StarAlgebra& whole() const { return *whole_; }

 private:
  AlgebraPtr sub_, whole_;
  std::vector<Matrix> onb_;  // orthonormal basis of the sub-span
};

TraceExpectation trace_conditional_expectation(AlgebraPtr sub, AlgebraPtr whole);

/// Orthonormalize a family of matrices in the Frobenius inner product,
/// dropping directions with singular value below tol * (largest).
std::vector<Matrix> orthonormalize_span(const std::vector<Matrix>& mats, int ambient_dim,
                                        double tol);

}  // namespace alloy
