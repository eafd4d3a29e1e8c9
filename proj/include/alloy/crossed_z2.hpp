#pragma once

#include "alloy/auto_polar.hpp"
#include "alloy/blend.hpp"
#include "alloy/cond_expectation.hpp"

namespace alloy {

// The pair (pi, h): an involutive *-automorphism of A together with a
// positive invertible h with pi(h) = 1 - h.  Determines a two-point alloy
// up to isomorphism.
struct FundamentalData {
  AlgebraPtr A;
  Matrix pi;  // coordinate operator on A
  Vector h;

  void validate() const;
};

// Concrete order-two crossed product realized in block form:
// a + b w  ->  [[a, b], [pi(b), pi(a)]], with w the implementing
// self-adjoint unitary.
struct CrossedProduct {
  AlgebraPtr base;
  AlgebraPtr X;     // ambient dimension 2n, dimension 2 dim(base)
  Matrix pi;        // the acting automorphism, on base coordinates
  Matrix varpi;
  StarHom embedA;

  Matrix embed_pair(const Matrix& a, const Matrix& b) const;  // a + b varpi
};

/// Builds the crossed product of A by an involutive *-automorphism; the
/// block model is verified against the abstract multiplication rule
/// (a x g)(b x h) = a alpha_g(b) x gh on all basis pairs.
CrossedProduct build_crossed_product(AlgebraPtr A, const Matrix& pi);

/// The alloy carried by the canonical projections p = (1 + w)/2, q = 1 - p.
TwoPointAlloy canonical_alloy(const CrossedProduct& cp);

/// G(a + b w) = a; its h equals 1/2.
ConditionalExpectation standard_expectation(const CrossedProduct& cp,
                                            const TwoPointAlloy& t, Rng& rng);

/// Builds X = A x_pi Z2 and locates p = (hk)^{1/2} w + h inside it; the
/// intrinsic data of the result satisfies phi(a) = (hk)^{1/2} pi(a)
/// (hk)^{-1/2}, E(a) = ha + phi(a)k, F(a) = ka + phi(a)h.
TwoPointAlloy build_alloy_from_fundamental_data(const FundamentalData& fd);

/// The quintuple (A, span{p, q}, X) of an alloy, for rank classification.
BlendQuintuple quintuple_of(const TwoPointAlloy& t);

/// Extraction pipeline: trace expectation, polar involution, covariant
/// averaging, h = G(p), and pi from the polar decomposition of phi.
FundamentalData extract_fundamental_data(const TwoPointAlloy& t, Rng& rng);
/// Same pipeline seeded with a user-supplied faithful expectation.
FundamentalData extract_fundamental_data(const TwoPointAlloy& t,
                                         const ConditionalExpectation& Ghat, Rng& rng);

struct ReconstructionResult {
  StarHom rho;         // crossed product -> X
  Matrix u;            // image of the implementing unitary
  std::map<std::string, double> residuals;

  double worst() const {
    double w = 0.0;
    for (const auto& [k, v] : residuals) w = std::max(w, v);
    return w;
  }
};

/// Realizes u = (hk)^{-1/2}(k p - h q) in X, verifies the intermediate
/// identities (unitarity, self-adjointness, pi(a) = u a u^{-1}, commutation
/// of hk with p), and builds the isomorphism a + b w -> a + b u together
/// with its compatibility with the standard expectations.
ReconstructionResult reconstruction_isomorphism(const TwoPointAlloy& t,
                                                const FundamentalData& fd, Rng& rng);

}  // namespace alloy
