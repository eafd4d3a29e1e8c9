#pragma once

#include "alloy/blend.hpp"
#include "alloy/intrinsic.hpp"

namespace alloy {

/// The 2x2 projection [[r, s], [s, 1-r]] with s = sqrt(r - r^2); requires
/// 0 < r < 1.
Matrix p_of_r(double r);

// One diagonal square: A = diagonal 2x2 matrices, B = span{p(r), q(r)},
// X = all 2x2 matrices.
struct SingleSquare {
  TwoPointAlloy alloy;
  BlendQuintuple quintuple;
};

SingleSquare single_square(double r);

/// Intrinsic pair of the single square; closed forms are
/// E(diag(x,y)) = (r x + (1-r) y) 1 and F(diag(x,y)) = ((1-r) x + r y) 1.
std::pair<Matrix, Matrix> single_square_intrinsic(double r);

struct DecayRow {
  int m = 0;                // 1-based block index
  double witness_norm = 0;  // |a P| for the block witness, equals sqrt(r_m)
  double k_upper = 0;       // running upper bound min_{j <= m} sqrt(r_j)
};

// Block-diagonal truncation of the sequence space model: N copies of the
// single square glued along the block diagonal, with P = diag(p(r_1), ...,
// p(r_N)).
struct TruncatedBlend {
  int N = 0;
  std::vector<double> r_values;
  TwoPointAlloy alloy;
  BlendQuintuple blend;
  Matrix P;
  std::vector<DecayRow> strictness_report;  // per-level constants

  BlendVerdict classify_truncation() const { return classify(blend); }
};

/// Builds the truncation and verifies the blockwise commutation identity
/// P a = E(a) P + (id - F)(a) Q against the closed forms.
TruncatedBlend truncated_blend(const std::vector<double>& r_values);

/// Per-block witnesses a with a_m = diag(1, 0): |a P| = sqrt(r_m), so the
/// truncation strictness constants satisfy K_N <= min_m sqrt(r_m).  When
/// r_m -> 0 the bound decays to zero; the limit blend is not strict.
std::vector<DecayRow> strictness_decay(const std::vector<double>& r_values);

/// Named r-sequences: "harmonic" (1/m), "geometric" (2^-m), "constant" (1/2).
std::vector<double> preset_sequence(const std::string& name, int n);

}  // namespace alloy
