#include "alloy/crossed_z2.hpp"

namespace alloy {

namespace {

Vector unit(int dim, int k) {
  Vector e = Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

}  // namespace

void FundamentalData::validate() const {
  const double tol = A->tol();
  const int d = A->dim();
  AlgebraAutomorphism auto_pi{A, pi};
  auto_pi.validate();
  if (!auto_pi.is_star_automorphism()) {
    throw NotStarAutomorphism("fundamental data: pi is not a *-automorphism");
  }
  if ((pi * pi - Matrix::Identity(d, d)).norm() > scaled_tol(tol, 1.0)) {
    throw NotInvolutive("fundamental data: pi is not involutive");
  }
  Matrix hm = A->from_coords(h);
  RealVector spec = hermitian_spectrum(hm, tol);
  if (spec.minCoeff() <= tol || spec.maxCoeff() >= 1.0 - tol) {
    throw NotPositive("fundamental data: spectrum of h must lie inside (0, 1)");
  }
  Vector residual = pi * h - (A->identity_coords() - h);
  if (A->from_coords(residual).norm() > scaled_tol(tol, 1.0)) {
    throw NotProjection("fundamental data: pi(h) != 1 - h");
  }
}

Matrix CrossedProduct::embed_pair(const Matrix& a, const Matrix& b) const {
  const int n = base->ambient_dim();
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  out.block(0, 0, n, n) = a;
  out.block(0, n, n, n) = b;
  out.block(n, 0, n, n) = base->from_coords(pi * base->decompose(b));
  out.block(n, n, n, n) = base->from_coords(pi * base->decompose(a));
  return out;
}

CrossedProduct build_crossed_product(AlgebraPtr A, const Matrix& pi) {
  const double tol = A->tol();
  const int d = A->dim();
  const int n = A->ambient_dim();

  AlgebraAutomorphism auto_pi{A, pi};
  auto_pi.validate();
  if (!auto_pi.is_star_automorphism()) {
    throw NotStarAutomorphism("crossed product: pi is not a *-automorphism");
  }
  if ((pi * pi - Matrix::Identity(d, d)).norm() > scaled_tol(tol, 1.0)) {
    throw NotInvolutive("crossed product: pi is not involutive");
  }

  auto block = [&](const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    Matrix pa = A->from_coords(pi * A->decompose(a));
    Matrix pb = A->from_coords(pi * A->decompose(b));
    out.block(0, 0, n, n) = a;
    out.block(0, n, n, n) = b;
    out.block(n, 0, n, n) = pb;
    out.block(n, n, n, n) = pa;
    return out;
  };

  Matrix zero = Matrix::Zero(n, n);
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(2 * d));
  for (int k = 0; k < d; ++k) basis.push_back(block(A->basis(k), zero));
  for (int k = 0; k < d; ++k) basis.push_back(block(zero, A->basis(k)));

  auto X = std::make_shared<StarAlgebra>(2 * n, std::move(basis), true, tol);

  Matrix varpi = block(zero, Matrix::Identity(n, n));
  if ((varpi - varpi.adjoint()).norm() > scaled_tol(tol, 1.0) ||
      (varpi * varpi - X->identity()).norm() > scaled_tol(tol, 1.0)) {
    throw NotInvolutive("crossed product: implementing unitary is not a self-adjoint unitary");
  }

  Matrix emb = Matrix::Zero(2 * d, d);
  emb.block(0, 0, d, d) = Matrix::Identity(d, d);
  StarHom embedA(A, X, emb, true);

  // verify the block model against the abstract crossed-product rule
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix& a = A->basis(i);
      const Matrix& b = A->basis(j);
      Matrix pb = A->from_coords(pi * unit(d, j));
      Matrix r1 = block(a, zero) * block(zero, b) - block(zero, a * b);
      Matrix r2 = block(zero, a) * block(b, zero) - block(zero, a * pb);
      Matrix r3 = block(zero, a) * block(zero, b) - block(a * pb, zero);
      double scale = scaled_tol(tol, a.norm() * b.norm());
      if (r1.norm() > scale || r2.norm() > scale || r3.norm() > scale) {
        throw MultiplicativityViolation("crossed product: block model violates the product rule");
      }
    }
  }
  // varpi a varpi = pi(a)
  for (int k = 0; k < d; ++k) {
    Matrix a_emb = embedA.apply(A->basis(k));
    Matrix lhs = varpi * a_emb * varpi;
    Matrix rhs = X->from_coords(emb * (pi * unit(d, k)));
    if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm())) {
      throw MultiplicativityViolation("crossed product: implementing unitary does not act by pi");
    }
  }

  return CrossedProduct{A, X, pi, varpi, embedA};
}

TwoPointAlloy canonical_alloy(const CrossedProduct& cp) {
  Matrix p = 0.5 * (cp.X->identity() + cp.varpi);
  return TwoPointAlloy(cp.base, cp.X, cp.embedA, p);
}

ConditionalExpectation standard_expectation(const CrossedProduct& cp,
                                            const TwoPointAlloy& t, Rng& rng) {
  const int d = cp.base->dim();
  Matrix map = Matrix::Zero(d, 2 * d);
  map.block(0, 0, d, d) = Matrix::Identity(d, d);
  return make_expectation(t, std::move(map), rng);
}

TwoPointAlloy build_alloy_from_fundamental_data(const FundamentalData& fd) {
  fd.validate();
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  const auto& A = *fd.A;
  const double tol = A.tol();

  Matrix hm = A.from_coords(fd.h);
  Matrix km = A.identity() - hm;
  Matrix s = psd_power(hm * km, 0.5, tol);

  Matrix p = cp.embedA.apply(hm) + cp.embedA.apply(s) * cp.varpi;
  if ((p - p.adjoint()).norm() > scaled_tol(tol, p.norm()) ||
      (p * p - p).norm() > scaled_tol(tol, p.norm())) {
    throw NotProjection("fundamental data does not produce a projection");
  }
  TwoPointAlloy t(fd.A, cp.X, cp.embedA, p);

  // the intrinsic data must match the closed forms attached to (pi, h)
  IntrinsicData data = compute_intrinsic(t);
  Matrix conj_s = conjugation_operator(A, s);
  Matrix expected_phi = conj_s * fd.pi;
  if ((data.phi - expected_phi).norm() > scaled_tol(std::sqrt(tol), 1.0)) {
    throw MultiplicativityViolation("alloy from data: intrinsic automorphism mismatch");
  }
  const int d = A.dim();
  Vector kc = A.identity_coords() - fd.h;
  for (int i = 0; i < d; ++i) {
    Vector a = unit(d, i);
    Vector e_expect = A.multiply(fd.h, a) + A.multiply(data.phi * a, kc);
    Vector f_expect = A.multiply(kc, a) + A.multiply(data.phi * a, fd.h);
    if (A.from_coords(data.E * a - e_expect).norm() > scaled_tol(std::sqrt(tol), 1.0) ||
        A.from_coords(data.F * a - f_expect).norm() > scaled_tol(std::sqrt(tol), 1.0)) {
      throw MultiplicativityViolation("alloy from data: intrinsic pair mismatch");
    }
  }

  BlendVerdict verdict = classify(quintuple_of(t));
  if (!verdict.is_alloy) {
    throw NotProjection("alloy from data: classification did not report an alloy");
  }
  return t;
}

BlendQuintuple quintuple_of(const TwoPointAlloy& t) {
  std::vector<Matrix> bbasis{t.p(), t.q()};
  auto B = std::make_shared<StarAlgebra>(t.X().ambient_dim(), std::move(bbasis), true,
                                         t.tol());
  Matrix jcoeff(t.dimX(), 2);
  jcoeff.col(0) = t.X().decompose(t.p());
  jcoeff.col(1) = t.X().decompose(t.q());
  StarHom j(B, t.X_ptr(), jcoeff, true);
  return BlendQuintuple(t.A_ptr(), B, t.X_ptr(), t.embedA(), j);
}

FundamentalData extract_fundamental_data(const TwoPointAlloy& t,
                                         const ConditionalExpectation& Ghat, Rng& rng) {
  IntrinsicData data = compute_intrinsic(t);
  PhiPolarReport polar = verify_Phi_polar(t, data);
  ConditionalExpectation G = covariantize(t, data, polar.PiX, Ghat, rng);

  AlgebraAutomorphism phi{t.A_ptr(), data.phi};
  PolarDecomposition pd = polar_decompose(phi);

  FundamentalData fd{t.A_ptr(), pd.pi_part.op, G.h};
  fd.validate();
  return fd;
}

FundamentalData extract_fundamental_data(const TwoPointAlloy& t, Rng& rng) {
  return extract_fundamental_data(t, trace_expectation(t, rng), rng);
}

ReconstructionResult reconstruction_isomorphism(const TwoPointAlloy& t,
                                                const FundamentalData& fd, Rng& rng) {
  const auto& A = t.A();
  const auto& X = t.X();
  const double tol = t.tol();
  const int d = A.dim();
  std::map<std::string, double> res;

  IntrinsicData data = compute_intrinsic(t);

  Matrix hm = A.from_coords(fd.h);
  Matrix km = A.identity() - hm;
  Vector kc = A.identity_coords() - fd.h;
  Matrix hX = t.embed(fd.h);
  Matrix kX = t.embed(kc);
  Matrix hkX = hX * kX;
  Matrix inv_sqrt = psd_power(hkX, -0.5, tol);

  Matrix u = inv_sqrt * (kX * t.p() - hX * t.q());

  // phi exchanges h and k
  res["phi_exchanges_h_k"] =
      std::max(A.from_coords(data.phi * fd.h - kc).norm(),
               A.from_coords(data.phi * kc - fd.h).norm());

  // E(hk) = hk = F(hk)
  Vector hk_c = A.multiply(fd.h, kc);
  res["expectation_fixes_hk"] = std::max(A.from_coords(data.E * hk_c - hk_c).norm(),
                                         A.from_coords(data.F * hk_c - hk_c).norm());

  // E(h^{-1} k) = 1 = F(k^{-1} h)
  Matrix h_inv = psd_power(hm, -1.0, tol);
  Matrix k_inv = psd_power(km, -1.0, tol);
  Vector hinvk = A.decompose(h_inv * km);
  Vector kinvh = A.decompose(k_inv * hm);
  res["normalized_means"] =
      std::max(A.from_coords(data.E * hinvk - A.identity_coords()).norm(),
               A.from_coords(data.F * kinvh - A.identity_coords()).norm());

  res["u_isometry"] = (u.adjoint() * u - X.identity()).norm();
  res["hk_commutes_with_p"] = (hkX * t.p() - t.p() * hkX).norm();
  res["v_equals_p_minus_h"] = ((kX * t.p() - hX * t.q()) - (t.p() - hX)).norm();
  res["u_selfadjoint"] = (u - u.adjoint()).norm();

  double worst_cov = 0.0;
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    Matrix lhs = u * ak * u;  // u^{-1} = u
    Matrix rhs = t.embed(fd.pi * unit(d, k));
    worst_cov = std::max(worst_cov, (lhs - rhs).norm());
  }
  res["pi_implemented_by_u"] = worst_cov;

  // the isomorphism a + b w -> a + b u
  CrossedProduct cp = build_crossed_product(fd.A, fd.pi);
  Matrix rho_coeff(t.dimX(), 2 * d);
  for (int k = 0; k < d; ++k) {
    Matrix ak = t.embed(unit(d, k));
    rho_coeff.col(k) = X.decompose(ak);
    rho_coeff.col(d + k) = X.decompose(ak * u);
  }
  StarHom rho(cp.X, t.X_ptr(), rho_coeff, true);  // validates multiplicativity
  res["rho_bijective"] =
      numerical_rank(rho_coeff, tol) == 2 * d ? 0.0 : 1.0;

  // G rho = rho H with G from h and H the standard expectation
  ConditionalExpectation G = from_h(t, data, fd.h, rng);
  Matrix Hmap = Matrix::Zero(d, 2 * d);
  Hmap.block(0, 0, d, d) = Matrix::Identity(d, d);
  res["G_rho_equals_rho_H"] = (G.map * rho_coeff - Hmap).norm();

  return ReconstructionResult{std::move(rho), std::move(u), std::move(res)};
}

}  // namespace alloy
