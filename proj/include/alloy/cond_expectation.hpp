#pragma once

#include <optional>

#include "alloy/intrinsic.hpp"

namespace alloy {

// A conditional expectation G: X -> A for a two-point alloy, stored as the
// coordinate map together with h = G(p) and k = G(q) = 1 - h.
struct ConditionalExpectation {
  Matrix map;  // dimA x dimX
  Vector h, k;

  Vector apply_coords(const Vector& x_coords) const { return map * x_coords; }
  Matrix apply(const TwoPointAlloy& t, const Matrix& c) const {
    return t.A().from_coords(map * t.X().decompose(c));
  }
};

/// Wraps a coordinate map as a conditional expectation after verifying the
/// defining axioms: identity on A, the A-bimodule property on basis triples,
/// h + k = 1, and positivity on random samples.
ConditionalExpectation make_expectation(const TwoPointAlloy& t, Matrix map, Rng& rng);

/// Max residual over the basis of h a - phi(a) h - (id - F)(a); the element
/// h = G(p) of any conditional expectation satisfies this identity.
double check_h_condition(const TwoPointAlloy& t, const IntrinsicData& d, const Vector& h);

/// The expectation ap + bq -> ah + b(1-h); requires the h-condition.
ConditionalExpectation from_h(const TwoPointAlloy& t, const IntrinsicData& d,
                              const Vector& h, Rng& rng);

/// Residuals of E(a) = ha + phi(a)k, F(a) = ka + phi(a)h,
/// (id-E)(a) = ka - phi(a)k, (id-F)(a) = ha - phi(a)h over the basis.
std::array<double, 4> explore_condition(const TwoPointAlloy& t, const IntrinsicData& d,
                                        const ConditionalExpectation& G);

/// Max residual of hka = phi^2(a) hk over the basis.
double hk_covariance(const TwoPointAlloy& t, const IntrinsicData& d,
                     const ConditionalExpectation& G);

/// Covariance of G: both equivalent conditions (G commutes with the extended
/// automorphism; phi(h) = 1 - h) are evaluated and must agree, otherwise
/// EquivalenceMismatch is thrown.
bool is_covariant(const TwoPointAlloy& t, const IntrinsicData& d,
                  const ConditionalExpectation& G);

/// The trace-induced faithful conditional expectation: orthogonal projection
/// onto the embedded copy of A pulled back through the embedding.
ConditionalExpectation trace_expectation(const TwoPointAlloy& t, Rng& rng);

/// Averages a faithful expectation with its conjugate under the involutive
/// part PiX of the polar decomposition of the extended automorphism; the
/// result is covariant and faithful.
ConditionalExpectation covariantize(const TwoPointAlloy& t, const IntrinsicData& d,
                                    const Matrix& PiX, const ConditionalExpectation& Ghat,
                                    Rng& rng);
ConditionalExpectation covariantize(const TwoPointAlloy& t, const IntrinsicData& d,
                                    const Matrix& PiX, Rng& rng);

/// alpha = min of the spectra of h and k; G(cc*) >= alpha cc* is verified on
/// random samples.  alpha > tol certifies faithfulness.
double pimsner_popa_constant(const TwoPointAlloy& t, const ConditionalExpectation& G,
                             Rng& rng, int samples = 50);

struct CondExpReport {
  bool covariant = false;
  double alpha = 0.0;
  std::vector<double> h_spectrum;
  bool faithful = false;
  std::map<std::string, double> residuals;
};

CondExpReport expectation_report(const TwoPointAlloy& t, const IntrinsicData& d,
                                 const ConditionalExpectation& G, Rng& rng);

struct AhZeroVerdict {
  bool ok = false;            // nonzero a cannot annihilate h or k
  double alpha = 0.0;
  double lower_slack = 0.0;   // min(|ah| - alpha |a|, |ak| - alpha |a|)
  std::optional<Vector> witness;  // for singular h: a != 0 with ah ~ 0
  double witness_residual = 0.0;
};

AhZeroVerdict ahzero_probe(const TwoPointAlloy& t, const ConditionalExpectation& G,
                           const Vector& a);

}  // namespace alloy
