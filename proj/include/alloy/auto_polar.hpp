#pragma once

#include "alloy/intrinsic.hpp"

namespace alloy {

// An invertible multiplicative linear operator on an algebra's coordinate
// space.
struct AlgebraAutomorphism {
  AlgebraPtr alg;
  Matrix op;

  /// Multiplicativity on basis pairs and invertibility.
  void validate() const;
  bool is_star_automorphism() const;
};

/// f^*(x) = f(x^*)^* on coordinate operators.
Matrix star_conjugate(const StarAlgebra& alg, const Matrix& op);

/// The dual (star-conjugate inverse); rho is a *-automorphism iff
/// dual(rho) rho = id.
Matrix dual(const StarAlgebra& alg, const Matrix& op);

/// Conjugation a -> s a s^{-1} as a coordinate operator; s must normalize
/// the algebra.
Matrix conjugation_operator(const StarAlgebra& alg, const Matrix& s);

struct PolarDecomposition {
  AlgebraAutomorphism pi_part;     // *-automorphism
  AlgebraAutomorphism gamma_part;  // positive automorphism
};

/// rho = pi gamma with gamma the principal square root of dual(rho) rho,
/// computed by eigendecomposition (Newton fallback for ill-conditioned
/// eigenvector matrices).  Throws SpectrumOnCut when dual(rho) rho has an
/// eigenvalue off the open right half-plane.
PolarDecomposition polar_decompose(const AlgebraAutomorphism& rho);

struct PhiPolarReport {
  Matrix PiX, GammaX;   // on X-coordinates
  Matrix pi_A, gamma_A; // restrictions to A-coordinates
  std::map<std::string, double> residuals;
  bool ok = false;
};

/// Polar decomposition of the extended intrinsic automorphism: checks
/// self-duality, that Pi is an involution commuting with Gamma, that Gamma
/// fixes p and q while Pi swaps them, that both preserve the embedded copy
/// of A, and that the restrictions give the polar decomposition of phi.
PhiPolarReport verify_Phi_polar(const TwoPointAlloy& t, const IntrinsicData& d);

}  // namespace alloy
