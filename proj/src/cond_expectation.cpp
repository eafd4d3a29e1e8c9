#include "alloy/cond_expectation.hpp"

#include <Eigen/Eigenvalues>

namespace alloy {

namespace {

Vector unit(int dim, int k) {
  Vector e = Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

// Restriction of an X-coordinate operator to the embedded copy of A.
Matrix restrict_to_A(const TwoPointAlloy& t, const Matrix& opX) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(t.embedA().coeff());
  return cod.solve(opX * t.embedA().coeff());
}

}  // namespace

ConditionalExpectation make_expectation(const TwoPointAlloy& t, Matrix map, Rng& rng) {
  const int da = t.dimA();
  const int dx = t.dimX();
  const double tol = t.tol();
  if (map.rows() != da || map.cols() != dx) {
    throw std::invalid_argument("make_expectation: map shape mismatch");
  }
  ConditionalExpectation G;
  G.map = std::move(map);
  G.h = G.map * t.X().decompose(t.p());
  G.k = G.map * t.X().decompose(t.q());

  // identity on A
  Matrix onA = G.map * t.embedA().coeff();
  if ((onA - Matrix::Identity(da, da)).norm() > scaled_tol(tol, 1.0)) {
    throw BimoduleViolation("expectation does not restrict to the identity on A");
  }
  // h + k = 1
  if ((G.h + G.k - t.A().identity_coords()).norm() > scaled_tol(tol, 1.0)) {
    throw BimoduleViolation("expectation: G(p) + G(q) != 1");
  }
  // bimodule property on basis triples
  const auto& A = t.A();
  const auto& X = t.X();
  long budget = 40000;
  for (int i = 0; i < da && budget > 0; ++i) {
    Matrix ai = t.embed(unit(da, i));
    for (int m = 0; m < dx && budget > 0; ++m) {
      Matrix xm = X.basis(m);
      for (int j = 0; j < da && budget > 0; ++j, --budget) {
        Matrix bj = t.embed(unit(da, j));
        Vector lhs = G.map * X.decompose(ai * xm * bj);
        Vector rhs = A.multiply(A.multiply(unit(da, i), G.map * X.decompose(xm)), unit(da, j));
        if (A.from_coords(lhs - rhs).norm() >
            scaled_tol(tol, A.from_coords(lhs).norm() + A.from_coords(rhs).norm())) {
          throw BimoduleViolation("expectation violates the bimodule property");
        }
      }
    }
  }
  // positivity on random samples: G(c*c) has min Hermitian eigenvalue >= -tol
  for (int s = 0; s < 32; ++s) {
    Vector c = rng.cgaussian_vector(dx);
    Matrix cm = X.from_coords(c);
    Matrix val = t.A().from_coords(G.map * X.decompose(cm.adjoint() * cm));
    if (min_hermitian_eigenvalue(val) < -scaled_tol(tol, val.norm())) {
      throw BimoduleViolation("expectation is not positive");
    }
  }
  return G;
}

double check_h_condition(const TwoPointAlloy& t, const IntrinsicData& d, const Vector& h) {
  const int da = t.dimA();
  const auto& A = t.A();
  Matrix Fp = Matrix::Identity(da, da) - d.F;
  double worst = 0.0;
  for (int k = 0; k < da; ++k) {
    Vector ek = unit(da, k);
    Vector lhs = A.multiply(h, ek);
    Vector rhs = A.multiply(d.phi * ek, h) + Fp * ek;
    worst = std::max(worst, operator_norm(A.from_coords(lhs - rhs)));
  }
  return worst;
}

ConditionalExpectation from_h(const TwoPointAlloy& t, const IntrinsicData& d,
                              const Vector& h, Rng& rng) {
  const double residual = check_h_condition(t, d, h);
  if (residual > scaled_tol(t.tol(), operator_norm(t.A().from_coords(h)))) {
    throw HConditionViolation("from_h: h fails the compatibility condition, residual " +
                              std::to_string(residual));
  }
  const int da = t.dimA();
  const int dx = t.dimX();
  Vector k = t.A().identity_coords() - h;
  Matrix map(da, dx);
  for (int m = 0; m < dx; ++m) {
    auto [a, b] = t.decompose_left(t.X().basis(m));
    map.col(m) = t.A().multiply(a, h) + t.A().multiply(b, k);
  }
  return make_expectation(t, std::move(map), rng);
}

std::array<double, 4> explore_condition(const TwoPointAlloy& t, const IntrinsicData& d,
                                        const ConditionalExpectation& G) {
  const int da = t.dimA();
  const auto& A = t.A();
  Matrix id = Matrix::Identity(da, da);
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
  for (int m = 0; m < da; ++m) {
    Vector a = unit(da, m);
    Vector phia = d.phi * a;
    auto nrm = [&](const Vector& v) { return A.from_coords(v).norm(); };
    out[0] = std::max(out[0], nrm(d.E * a - (A.multiply(G.h, a) + A.multiply(phia, G.k))));
    out[1] = std::max(out[1], nrm(d.F * a - (A.multiply(G.k, a) + A.multiply(phia, G.h))));
    out[2] = std::max(out[2], nrm((id - d.E) * a - (A.multiply(G.k, a) - A.multiply(phia, G.k))));
    out[3] = std::max(out[3], nrm((id - d.F) * a - (A.multiply(G.h, a) - A.multiply(phia, G.h))));
  }
  return out;
}

double hk_covariance(const TwoPointAlloy& t, const IntrinsicData& d,
                     const ConditionalExpectation& G) {
  const int da = t.dimA();
  const auto& A = t.A();
  Vector hk = A.multiply(G.h, G.k);
  double worst = 0.0;
  for (int m = 0; m < da; ++m) {
    Vector a = unit(da, m);
    Vector lhs = A.multiply(hk, a);
    Vector rhs = A.multiply(d.phi * (d.phi * a), hk);
    worst = std::max(worst, A.from_coords(lhs - rhs).norm());
  }
  return worst;
}

bool is_covariant(const TwoPointAlloy& t, const IntrinsicData& d,
                  const ConditionalExpectation& G) {
  const double tol = t.tol();
  // (i) G commutes with the extended automorphism
  double res_commute = (G.map * d.PhiX - d.phi * G.map).norm();
  // (ii) phi(h) = 1 - h
  double res_h = t.A().from_coords(d.phi * G.h - G.k).norm();

  const double tau = scaled_tol(tol, 1.0);
  bool v1 = res_commute <= tau;
  bool v2 = res_h <= tau;
  if (v1 != v2) {
    bool clear1 = res_commute <= tau || res_commute >= 100.0 * tau;
    bool clear2 = res_h <= tau || res_h >= 100.0 * tau;
    if (clear1 && clear2) {
      throw EquivalenceMismatch("covariance checks disagree: commutation residual " +
                                std::to_string(res_commute) + ", h residual " +
                                std::to_string(res_h));
    }
    return v1 && v2;
  }
  return v1;
}

ConditionalExpectation trace_expectation(const TwoPointAlloy& t, Rng& rng) {
  AlgebraPtr sub = image_algebra(t.embedA());
  TraceExpectation te(sub, t.X_ptr());
  const int da = t.dimA();
  const int dx = t.dimX();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(t.embedA().coeff());
  Matrix map(da, dx);
  for (int m = 0; m < dx; ++m) {
    Matrix projected = te.apply(t.X().basis(m));
    map.col(m) = cod.solve(t.X().decompose(projected));
  }
  return make_expectation(t, std::move(map), rng);
}

ConditionalExpectation covariantize(const TwoPointAlloy& t, const IntrinsicData& d,
                                    const Matrix& PiX, const ConditionalExpectation& Ghat,
                                    Rng& rng) {
  Matrix piA = restrict_to_A(t, PiX);
  Matrix map = 0.5 * (Ghat.map + piA * Ghat.map * PiX);
  ConditionalExpectation G = make_expectation(t, std::move(map), rng);

  const double tol = t.tol();
  double res_pi = t.A().from_coords(piA * G.h - G.k).norm();
  double res_phi = t.A().from_coords(d.phi * G.h - G.k).norm();
  if (res_pi > scaled_tol(tol, 1.0) || res_phi > scaled_tol(tol, 1.0)) {
    throw EquivalenceMismatch("covariantize: averaged expectation is not covariant");
  }
  if (pimsner_popa_constant(t, G, rng) <= tol) {
    throw NotFaithful("covariantize: averaged expectation is not faithful");
  }
  return G;
}

ConditionalExpectation covariantize(const TwoPointAlloy& t, const IntrinsicData& d,
                                    const Matrix& PiX, Rng& rng) {
  return covariantize(t, d, PiX, trace_expectation(t, rng), rng);
}

double pimsner_popa_constant(const TwoPointAlloy& t, const ConditionalExpectation& G,
                             Rng& rng, int samples) {
  Matrix h = t.A().from_coords(G.h);
  Matrix k = t.A().from_coords(G.k);
  RealVector hs = hermitian_spectrum(h, t.tol());
  RealVector ks = hermitian_spectrum(k, t.tol());
  double alpha = std::min(hs.minCoeff(), ks.minCoeff());

  const int dx = t.dimX();
  for (int s = 0; s < samples; ++s) {
    Vector c = rng.cgaussian_vector(dx);
    Matrix cm = t.X().from_coords(c);
    Matrix ccs = cm * cm.adjoint();
    Matrix lhs = t.embed(G.map * t.X().decompose(ccs));
    Matrix gap = lhs - alpha * ccs;
    if (min_hermitian_eigenvalue(gap) < -scaled_tol(t.tol(), ccs.norm())) {
      throw NotFaithful("Pimsner-Popa bound fails on a sample");
    }
  }
  return alpha;
}

CondExpReport expectation_report(const TwoPointAlloy& t, const IntrinsicData& d,
                                 const ConditionalExpectation& G, Rng& rng) {
  CondExpReport rep;
  rep.alpha = pimsner_popa_constant(t, G, rng);
  rep.faithful = rep.alpha > t.tol();
  rep.covariant = is_covariant(t, d, G);
  RealVector spec = hermitian_spectrum(t.A().from_coords(G.h), t.tol());
  rep.h_spectrum.assign(spec.data(), spec.data() + spec.size());

  auto ec = explore_condition(t, d, G);
  rep.residuals["expectation_formula_E"] = ec[0];
  rep.residuals["expectation_formula_F"] = ec[1];
  rep.residuals["expectation_formula_E_perp"] = ec[2];
  rep.residuals["expectation_formula_F_perp"] = ec[3];
  rep.residuals["hk_covariance"] = hk_covariance(t, d, G);
  rep.residuals["h_condition"] = check_h_condition(t, d, G.h);
  if (rep.covariant) {
    // invertibility of h and k certified through the spectra
    rep.residuals["h_min_eigenvalue"] = spec.minCoeff();
  }
  return rep;
}

AhZeroVerdict ahzero_probe(const TwoPointAlloy& t, const ConditionalExpectation& G,
                           const Vector& a) {
  AhZeroVerdict v;
  const auto& A = t.A();
  Matrix h = A.from_coords(G.h);
  Matrix k = A.from_coords(G.k);
  RealVector hs = hermitian_spectrum(h, t.tol());
  RealVector ks = hermitian_spectrum(k, t.tol());
  v.alpha = std::min(hs.minCoeff(), ks.minCoeff());

  Matrix am = A.from_coords(a);
  double na = operator_norm(am);
  if (v.alpha > t.tol()) {
    double nah = operator_norm(am * h);
    double nak = operator_norm(am * k);
    v.lower_slack = std::min(nah - v.alpha * na, nak - v.alpha * na);
    v.ok = v.lower_slack >= -scaled_tol(t.tol(), na);
    return v;
  }

  // singular h or k: exhibit a nonzero annihilator from the small eigenspace
  const Matrix& target = hs.minCoeff() <= ks.minCoeff() ? h : k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(target));
  Matrix w = Matrix::Zero(target.rows(), target.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) <= std::sqrt(t.tol())) {
      w += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  double res = 0.0;
  Vector wc = A.decompose(w, res);
  v.witness = wc;
  v.witness_residual = operator_norm(A.from_coords(wc) * target);
  v.ok = false;
  return v;
}

}  // namespace alloy
