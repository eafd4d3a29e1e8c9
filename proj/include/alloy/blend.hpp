#pragma once

#include <string>

#include "alloy/star_algebra.hpp"

namespace alloy {

// Quintuple (A, B, i, j, X) with i: A -> X and j: B -> X.
struct BlendQuintuple {
  AlgebraPtr A, B, X;
  StarHom i, j;

  BlendQuintuple(AlgebraPtr A_, AlgebraPtr B_, AlgebraPtr X_, StarHom i_, StarHom j_);
};

struct BlendVerdict {
  bool is_blend = false;
  bool is_alloy = false;
  bool is_strict = false;
  int rank_ij = 0;
  int rank_ji = 0;
  int dim_X = 0;
  int dim_A_tensor_B = 0;
  // In finite dimensions dense range coincides with surjectivity, so
  // strictness is recorded identically to the blend flag.
  std::string note;
};

enum class ProductOrder { ij, ji };

/// Matrix of a (x) b -> i(a) j(b) (or b (x) a -> j(b) i(a)) with respect to
/// the product basis of the tensor factors and the basis of X.  Column
/// (k, l) holds the X-coordinates of the corresponding product; throws
/// NotInX when a product escapes the span of X.
Matrix circledast_matrix(const BlendQuintuple& q, ProductOrder order);

BlendVerdict classify(const BlendQuintuple& q);

struct MorphismReport {
  double residual_i = 0.0;       // | phi i1 - i2 |
  double residual_j = 0.0;       // | phi j1 - j2 |
  bool intertwines = false;
  bool rigidity_applies = false; // q1 is a blend and q2 an alloy
  bool phi_bijective = false;
  double bijectivity_defect = 0.0;  // sigma_min / sigma_max of phi
  bool rigidity_holds = false;   // bijective whenever rigidity applies
};

/// Checks phi i1 = i2 and phi j1 = j2 (throws IntertwiningViolation when
/// either fails), then tests the blend-to-alloy rigidity: a morphism from a
/// blend to an alloy must be bijective.
MorphismReport check_morphism(const BlendQuintuple& q1, const BlendQuintuple& q2,
                              const StarHom& phi);

}  // namespace alloy
