#include "alloy/intrinsic.hpp"

namespace alloy {

namespace {

std::vector<std::pair<int, int>> index_pairs(int dim, int cap = 32) {
  std::vector<std::pair<int, int>> pairs;
  if (dim <= cap) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 eng(0x5eedu);
    for (int s = 0; s < cap * cap; ++s) {
      pairs.emplace_back(static_cast<int>(eng() % dim), static_cast<int>(eng() % dim));
    }
  }
  return pairs;
}

Vector unit(int dim, int k) {
  Vector e = Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

// f^*(x) = f(x^*)^* on coordinate operators; star_mat is the algebra's S.
Matrix star_conjugate_op(const Matrix& star_mat, const Matrix& op) {
  return star_mat * op.conjugate() * star_mat.conjugate();
}

}  // namespace

TwoPointAlloy::TwoPointAlloy(AlgebraPtr A, AlgebraPtr X, StarHom embedA, Matrix p)
    : A_(std::move(A)), X_(std::move(X)), embedA_(std::move(embedA)), p_(std::move(p)) {
  q_ = X_->identity() - p_;
  const int da = A_->dim();
  const int dx = X_->dim();
  if (dx != 2 * da) {
    throw SingularDecomposition("two-point alloy: dim X must equal 2 dim A");
  }
  left_map_.resize(dx, dx);
  right_map_.resize(dx, dx);
  for (int k = 0; k < da; ++k) {
    Matrix ak = embed(unit(da, k));
    left_map_.col(k) = X_->decompose(ak * p_);
    left_map_.col(da + k) = X_->decompose(ak * q_);
    right_map_.col(k) = X_->decompose(p_ * ak);
    right_map_.col(da + k) = X_->decompose(q_ * ak);
  }
  validate();
  left_lu_ = Eigen::PartialPivLU<Matrix>(left_map_);
  right_lu_ = Eigen::PartialPivLU<Matrix>(right_map_);
}

void TwoPointAlloy::validate() const {
  const double tol = X_->tol();
  if (!embedA_.unital()) {
    throw InvalidHomomorphism("two-point alloy: embedding of A must be unital");
  }
  if ((p_ - p_.adjoint()).norm() > scaled_tol(tol, p_.norm())) {
    throw NotProjection("two-point alloy: p is not self-adjoint");
  }
  if ((p_ * p_ - p_).norm() > scaled_tol(tol, p_.norm())) {
    throw NotProjection("two-point alloy: p is not idempotent");
  }
  if (!X_->contains(p_)) {
    throw NotInSpan("two-point alloy: p does not lie in X");
  }
  if (numerical_rank(left_map_, tol) != left_map_.rows() ||
      numerical_rank(right_map_, tol) != right_map_.rows()) {
    throw SingularDecomposition("two-point alloy: (a, b) -> ap + bq is not bijective");
  }
}

std::pair<Vector, Vector> TwoPointAlloy::decompose_left(const Matrix& c) const {
  Vector coords = X_->decompose(c);
  Vector s = left_lu_.solve(coords);
  Vector a = s.head(dimA());
  Vector b = s.tail(dimA());
  Matrix recon = embed(a) * p_ + embed(b) * q_;
  if ((recon - c).norm() > scaled_tol(tol(), c.norm())) {
    throw SingularDecomposition("decompose_left: residual exceeds tolerance");
  }
  return {a, b};
}

std::pair<Vector, Vector> TwoPointAlloy::decompose_right(const Matrix& c) const {
  Vector coords = X_->decompose(c);
  Vector s = right_lu_.solve(coords);
  Vector a = s.head(dimA());
  Vector b = s.tail(dimA());
  Matrix recon = p_ * embed(a) + q_ * embed(b);
  if ((recon - c).norm() > scaled_tol(tol(), c.norm())) {
    throw SingularDecomposition("decompose_right: residual exceeds tolerance");
  }
  return {a, b};
}

std::pair<Matrix, Matrix> compute_intrinsic_pair(const TwoPointAlloy& t) {
  const int d = t.dimA();
  Matrix E(d, d), F(d, d);
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    auto [x, y] = t.decompose_left(t.p() * ak);  // pa = E(a) p + (id - F)(a) q
    E.col(k) = x;
    F.col(k) = unit(d, k) - y;
  }
  // cross-checks: pap = E(a) p, qaq = F(a) q, qa = (id - E)(a) p + F(a) q
  const double tol = t.tol();
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    Matrix pap = t.p() * ak * t.p();
    Matrix qaq = t.q() * ak * t.q();
    if ((pap - t.embed(E.col(k)) * t.p()).norm() > scaled_tol(tol, pap.norm()) ||
        (qaq - t.embed(F.col(k)) * t.q()).norm() > scaled_tol(tol, qaq.norm())) {
      throw SingularDecomposition("intrinsic pair: compression identities fail");
    }
    auto [x, y] = t.decompose_left(t.q() * ak);
    if ((x - (unit(d, k) - E.col(k))).norm() > scaled_tol(tol, 1.0) ||
        (y - F.col(k)).norm() > scaled_tol(tol, 1.0)) {
      throw SingularDecomposition("intrinsic pair: complementary identity fails");
    }
  }
  return {E, F};
}

std::pair<Matrix, Matrix> compute_right_pair(const TwoPointAlloy& t) {
  const int d = t.dimA();
  Matrix Estar(d, d), Fstar(d, d);
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    auto [x, y] = t.decompose_right(ak * t.p());  // ap = p Estar(a) + q (id - Fstar)(a)
    Estar.col(k) = x;
    Fstar.col(k) = unit(d, k) - y;
  }
  const double tol = t.tol();
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    Matrix pap = t.p() * ak * t.p();
    Matrix qaq = t.q() * ak * t.q();
    if ((pap - t.p() * t.embed(Estar.col(k))).norm() > scaled_tol(tol, pap.norm()) ||
        (qaq - t.q() * t.embed(Fstar.col(k))).norm() > scaled_tol(tol, qaq.norm())) {
      throw SingularDecomposition("right pair: compression identities fail");
    }
    auto [x, y] = t.decompose_right(ak * t.q());
    if ((x - (unit(d, k) - Estar.col(k))).norm() > scaled_tol(tol, 1.0) ||
        (y - Fstar.col(k)).norm() > scaled_tol(tol, 1.0)) {
      throw SingularDecomposition("right pair: complementary identity fails");
    }
  }
  return {Estar, Fstar};
}

std::pair<Matrix, Matrix> intrinsic_automorphism(const TwoPointAlloy& t, const Matrix& E,
                                                 const Matrix& F, const Matrix& Estar,
                                                 const Matrix& Fstar) {
  const int d = t.dimA();
  const double tol = t.tol();
  Matrix id = Matrix::Identity(d, d);
  Matrix phi = E + F - id;
  Matrix phi_inv = Estar + Fstar - id;

  auto check = [&](const Matrix& lhs, const Matrix& rhs, const char* what) {
    if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm() + rhs.norm())) {
      throw MultiplicativityViolation(std::string("intrinsic automorphism: ") + what);
    }
  };
  check(E * Estar, E, "E Estar != E");
  check(F * Estar, Estar, "F Estar != Estar");
  check(F * Fstar, F, "F Fstar != F");
  check(E * Fstar, Fstar, "E Fstar != Fstar");
  check(phi * phi_inv, id, "phi phi_inv != id");
  check(phi_inv * phi, id, "phi_inv phi != id");

  const auto& A = t.A();
  for (const auto& [i, j] : index_pairs(d)) {
    Vector lhs = phi * A.multiply(unit(d, i), unit(d, j));
    Vector rhs = A.multiply(phi * unit(d, i), phi * unit(d, j));
    if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm() + rhs.norm())) {
      throw MultiplicativityViolation("intrinsic automorphism is not multiplicative");
    }
  }
  return {phi, phi_inv};
}

Matrix extend_Phi(const TwoPointAlloy& t, const Matrix& phi) {
  const int dx = t.dimX();
  const double tol = t.tol();
  Matrix PhiX(dx, dx);
  for (int m = 0; m < dx; ++m) {
    auto [a, b] = t.decompose_left(t.X().basis(m));
    Matrix img = t.embed(phi * b) * t.p() + t.embed(phi * a) * t.q();
    PhiX.col(m) = t.X().decompose(img);
  }

  Vector pc = t.X().decompose(t.p());
  Vector qc = t.X().decompose(t.q());
  if ((PhiX * pc - qc).norm() > scaled_tol(tol, 1.0) ||
      (PhiX * qc - pc).norm() > scaled_tol(tol, 1.0)) {
    throw MultiplicativityViolation("extended automorphism does not swap p and q");
  }
  if (numerical_rank(PhiX, tol) != dx) {
    throw MultiplicativityViolation("extended automorphism is not bijective");
  }
  const auto& X = t.X();
  for (const auto& [i, j] : index_pairs(dx)) {
    Vector lhs = PhiX * X.multiply(unit(dx, i), unit(dx, j));
    Vector rhs = X.multiply(PhiX * unit(dx, i), PhiX * unit(dx, j));
    if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm() + rhs.norm())) {
      throw MultiplicativityViolation("extended automorphism is not multiplicative");
    }
  }
  return PhiX;
}

IntrinsicData compute_intrinsic(const TwoPointAlloy& t) {
  IntrinsicData d;
  std::tie(d.E, d.F) = compute_intrinsic_pair(t);
  std::tie(d.Estar, d.Fstar) = compute_right_pair(t);
  std::tie(d.phi, d.phi_inv) = intrinsic_automorphism(t, d.E, d.F, d.Estar, d.Fstar);
  d.PhiX = extend_Phi(t, d.phi);
  return d;
}

Matrix star_via_intrinsic(const TwoPointAlloy& t, const IntrinsicData& d, const Matrix& c) {
  auto [a, b] = t.decompose_left(c);
  Vector as = t.A().adjoint_coords(a);
  Vector bs = t.A().adjoint_coords(b);
  Vector pc = d.E * as + (bs - d.E * bs);
  Vector qc = (as - d.F * as) + d.F * bs;
  return t.embed(pc) * t.p() + t.embed(qc) * t.q();
}

Matrix multiply_via_intrinsic(const TwoPointAlloy& t, const IntrinsicData& d,
                              const Matrix& c1, const Matrix& c2) {
  auto [a1, b1] = t.decompose_left(c1);
  auto [a2, b2] = t.decompose_left(c2);
  const auto& A = t.A();
  Vector pc = A.multiply(a1, d.E * a2) + A.multiply(b1, a2 - d.E * a2);
  Vector qc = A.multiply(a1, b2 - d.F * b2) + A.multiply(b1, d.F * b2);
  return t.embed(pc) * t.p() + t.embed(qc) * t.q();
}

StrictnessReport strictness_constant(const TwoPointAlloy& t, Rng& rng, int samples) {
  StrictnessReport rep;
  rep.samples = samples;
  const int d = t.dimA();
  const int nx = t.X().ambient_dim();

  // Gram matrix of A's basis in its own ambient Hilbert-Schmidt inner product.
  Matrix gram(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      gram(k, l) = (t.A().basis(k).adjoint() * t.A().basis(l)).trace();
  Matrix gram_inv_sqrt = psd_power(gram, -0.5, t.tol());

  auto hs_constant = [&](const Matrix& proj) {
    Matrix m(static_cast<Eigen::Index>(nx) * nx, d);
    for (int k = 0; k < d; ++k) m.col(k) = vectorize(t.embed(unit(d, k)) * proj);
    return smallest_singular_value(m * gram_inv_sqrt);
  };
  rep.k_hs_p = hs_constant(t.p());
  rep.k_hs_q = hs_constant(t.q());

  auto ratio = [&](const Vector& a, const Matrix& proj) {
    double na = operator_norm(t.A().from_coords(a));
    if (na == 0.0) return std::numeric_limits<double>::infinity();
    return operator_norm(t.embed(a) * proj) / na;
  };

  auto op_constant = [&](const Matrix& proj) {
    double best = std::numeric_limits<double>::infinity();
    Vector best_a;
    // deterministic probes first: basis directions often attain the minimum
    for (int k = 0; k < d; ++k) {
      Vector a = unit(d, k);
      double r = ratio(a, proj);
      if (r < best) {
        best = r;
        best_a = a;
      }
    }
    for (int s = 0; s < samples; ++s) {
      Vector a = rng.cgaussian_vector(d);
      double r = ratio(a, proj);
      if (r < best) {
        best = r;
        best_a = a;
      }
    }
    double step = 0.5;
    for (int it = 0; it < 200; ++it) {
      Vector cand = best_a + step * rng.cgaussian_vector(d);
      double r = ratio(cand, proj);
      if (r < best) {
        best = r;
        best_a = cand;
      } else {
        step *= 0.95;
      }
    }
    return best;
  };
  rep.k_op_p = op_constant(t.p());
  rep.k_op_q = op_constant(t.q());

  auto [E, F] = compute_intrinsic_pair(t);
  double slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Vector a = rng.cgaussian_vector(d);
    Vector asa = t.A().multiply(t.A().adjoint_coords(a), a);
    double lhs_e = operator_norm(t.A().from_coords(E * asa));
    double lhs_f = operator_norm(t.A().from_coords(F * asa));
    double ap = operator_norm(t.embed(a) * t.p());
    double aq = operator_norm(t.embed(a) * t.q());
    slack = std::min(slack, lhs_e - ap * ap);
    slack = std::min(slack, lhs_f - aq * aq);
  }
  rep.expectation_bound_slack = slack;
  return rep;
}

std::map<std::string, double> intrinsic_identity_residuals(const TwoPointAlloy& t,
                                                           const IntrinsicData& d) {
  std::map<std::string, double> res;
  const int da = t.dimA();
  const int dx = t.dimX();
  const auto& A = t.A();
  const auto& X = t.X();
  Matrix idA = Matrix::Identity(da, da);
  Matrix Ep = idA - d.E;  // id - E
  Matrix Fp = idA - d.F;

  auto amb_norm = [&](const Vector& u) { return A.from_coords(u).norm(); };
  auto track = [&](const std::string& key, double value) {
    auto it = res.find(key);
    if (it == res.end() || it->second < value) res[key] = value;
  };

  for (const auto& [i, j] : index_pairs(da)) {
    Vector ei = unit(da, i), ej = unit(da, j);
    Vector ab = A.multiply(ei, ej);
    track("product_rule_E",
          amb_norm(d.E * ab - (A.multiply(d.E * ei, d.E * ej) + A.multiply(Fp * ei, Ep * ej))));
    track("product_rule_F",
          amb_norm(d.F * ab - (A.multiply(Ep * ei, Fp * ej) + A.multiply(d.F * ei, d.F * ej))));
    track("product_rule_E_perp",
          amb_norm(Ep * ab - (A.multiply(Ep * ei, d.E * ej) + A.multiply(d.F * ei, Ep * ej))));
    track("product_rule_F_perp",
          amb_norm(Fp * ab - (A.multiply(d.E * ei, Fp * ej) + A.multiply(Fp * ei, d.F * ej))));
  }

  res["compat_E_Estar"] = (d.E * d.Estar - d.E).norm();
  res["compat_F_Estar"] = (d.F * d.Estar - d.Estar).norm();
  res["compat_F_Fstar"] = (d.F * d.Fstar - d.F).norm();
  res["compat_E_Fstar"] = (d.E * d.Fstar - d.Fstar).norm();
  res["phi_inverse"] = (d.phi * d.phi_inv - idA).norm();
  res["phi_E_intertwine"] = (d.phi * d.E - d.F * d.phi).norm();
  res["phi_F_intertwine"] = (d.phi * d.F - d.E * d.phi).norm();

  // pa = phi(a) p + (id - F)(a), with the last term embedded in X
  double pc_res = 0.0;
  for (int k = 0; k < da; ++k) {
    Vector ek = unit(da, k);
    Matrix lhs = t.p() * t.embed(ek);
    Matrix rhs = t.embed(d.phi * ek) * t.p() + t.embed(Fp * ek);
    pc_res = std::max(pc_res, (lhs - rhs).norm());
  }
  res["p_commutation"] = pc_res;

  const Matrix& S = A.star_matrix();
  res["right_pair_is_adjoint_E"] = (d.Estar - star_conjugate_op(S, d.E)).norm();
  res["right_pair_is_adjoint_F"] = (d.Fstar - star_conjugate_op(S, d.F)).norm();
  res["phi_star_is_inverse"] = (star_conjugate_op(S, d.phi) - d.phi_inv).norm();
  Matrix PhiX_inv = d.PhiX.partialPivLu().inverse();
  res["Phi_star_is_inverse"] =
      (star_conjugate_op(X.star_matrix(), d.PhiX) - PhiX_inv).norm();

  double star_res = 0.0, mult_res = 0.0;
  for (int m = 0; m < dx; ++m) {
    const Matrix& c = X.basis(m);
    star_res = std::max(star_res, (star_via_intrinsic(t, d, c) - c.adjoint()).norm());
  }
  for (const auto& [i, j] : index_pairs(dx)) {
    const Matrix& c1 = X.basis(i);
    const Matrix& c2 = X.basis(j);
    mult_res = std::max(mult_res, (multiply_via_intrinsic(t, d, c1, c2) - c1 * c2).norm());
  }
  res["star_formula"] = star_res;
  res["mult_formula"] = mult_res;
  return res;
}

}  // namespace alloy
