#pragma once

#include "alloy/crossed_z2.hpp"
#include "alloy/rng.hpp"

namespace alloy {

/// Random Hermitian element of the algebra, as coordinates.
Vector random_hermitian_coords(const StarAlgebra& alg, Rng& rng);

/// Conjugation by a random unitary inside the algebra (a *-automorphism).
Matrix random_inner_star_automorphism(const StarAlgebra& alg, Rng& rng);

/// Conjugation by a random positive invertible element of the algebra
/// (a positive automorphism), spectrum kept in [1/bound, bound].
Matrix random_positive_conjugation(const StarAlgebra& alg, Rng& rng, double bound = 4.0);

/// Valid fundamental data with vector-space dimension dimA in
/// {1, 2, 4, 8, 16}: A is chosen from a small family of block-sum algebras,
/// pi as conjugation by a self-adjoint block-structure-compatible unitary
/// (an exact involution), and h = 1/2 + d with d a pi-antisymmetric
/// Hermitian element scaled so that the spectrum of h stays inside
/// (0.05, 0.95).
FundamentalData random_fundamental_data(int dimA, Rng& rng, double tol = kDefaultTol);

}  // namespace alloy
