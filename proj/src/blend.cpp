#include "alloy/blend.hpp"

namespace alloy {

BlendQuintuple::BlendQuintuple(AlgebraPtr A_, AlgebraPtr B_, AlgebraPtr X_, StarHom i_,
                               StarHom j_)
    : A(std::move(A_)), B(std::move(B_)), X(std::move(X_)), i(std::move(i_)),
      j(std::move(j_)) {
  if (i.domain_ptr().get() != A.get() || j.domain_ptr().get() != B.get() ||
      i.codomain_ptr().get() != X.get() || j.codomain_ptr().get() != X.get()) {
    throw InvalidHomomorphism("blend quintuple: maps do not match the algebras");
  }
}

Matrix circledast_matrix(const BlendQuintuple& q, ProductOrder order) {
  const int da = q.A->dim();
  const int db = q.B->dim();
  const int dx = q.X->dim();
  Matrix out(dx, static_cast<Eigen::Index>(da) * db);

  std::vector<Matrix> ia(static_cast<size_t>(da)), jb(static_cast<size_t>(db));
  for (int k = 0; k < da; ++k) ia[static_cast<size_t>(k)] = q.X->from_coords(q.i.coeff().col(k));
  for (int l = 0; l < db; ++l) jb[static_cast<size_t>(l)] = q.X->from_coords(q.j.coeff().col(l));

  auto column = [&](const Matrix& prod) {
    double residual = 0.0;
    Vector c = q.X->decompose(prod, residual);
    if (residual > scaled_tol(q.X->tol(), prod.norm())) {
      throw NotInX("circledast: product is not in the span of X");
    }
    return c;
  };

  if (order == ProductOrder::ij) {
    for (int k = 0; k < da; ++k)
      for (int l = 0; l < db; ++l)
        out.col(static_cast<Eigen::Index>(k) * db + l) =
            column(ia[static_cast<size_t>(k)] * jb[static_cast<size_t>(l)]);
  } else {
    for (int l = 0; l < db; ++l)
      for (int k = 0; k < da; ++k)
        out.col(static_cast<Eigen::Index>(l) * da + k) =
            column(jb[static_cast<size_t>(l)] * ia[static_cast<size_t>(k)]);
  }
  return out;
}

BlendVerdict classify(const BlendQuintuple& q) {
  BlendVerdict v;
  v.dim_X = q.X->dim();
  v.dim_A_tensor_B = q.A->dim() * q.B->dim();

  const double tol = q.X->tol();
  Matrix mij = circledast_matrix(q, ProductOrder::ij);
  Matrix mji = circledast_matrix(q, ProductOrder::ji);
  v.rank_ij = numerical_rank(mij, tol);
  v.rank_ji = numerical_rank(mji, tol);

  v.is_blend = (v.rank_ij == v.dim_X) && (v.rank_ji == v.dim_X);
  v.is_alloy = v.is_blend && (v.rank_ij == v.dim_A_tensor_B) &&
               (v.rank_ji == v.dim_A_tensor_B);
  v.is_strict = v.is_blend;
  v.note = "finite dimensions: dense range = surjectivity, so strict iff blend";
  return v;
}

MorphismReport check_morphism(const BlendQuintuple& q1, const BlendQuintuple& q2,
                              const StarHom& phi) {
  if (q1.A->dim() != q2.A->dim() || q1.B->dim() != q2.B->dim()) {
    throw std::invalid_argument("check_morphism: quintuples must share A and B");
  }
  MorphismReport rep;
  Matrix ri = phi.coeff() * q1.i.coeff() - q2.i.coeff();
  Matrix rj = phi.coeff() * q1.j.coeff() - q2.j.coeff();
  rep.residual_i = ri.norm();
  rep.residual_j = rj.norm();
  const double tol = q2.X->tol();
  const double bound_i = scaled_tol(tol, q2.i.coeff().norm());
  const double bound_j = scaled_tol(tol, q2.j.coeff().norm());
  rep.intertwines = rep.residual_i <= bound_i && rep.residual_j <= bound_j;
  if (!rep.intertwines) {
    throw IntertwiningViolation("morphism does not intertwine the embeddings");
  }

  BlendVerdict v1 = classify(q1);
  BlendVerdict v2 = classify(q2);
  rep.rigidity_applies = v1.is_blend && v2.is_alloy;
  rep.bijectivity_defect = 1.0 / condition_number(phi.coeff());
  rep.phi_bijective = phi.coeff().rows() == phi.coeff().cols() &&
                      numerical_rank(phi.coeff(), tol) == phi.coeff().rows();
  rep.rigidity_holds = !rep.rigidity_applies || rep.phi_bijective;
  return rep;
}

}  // namespace alloy
