#pragma once

#include "alloy/blend.hpp"
#include "alloy/rng.hpp"

namespace alloy {

// A weighted finite probability space with two partitions whose averaging
// maps commute and meet only in the constants.  A is the functions on the
// point set, B and C the partition-constant functions, D = B n C = C 1.
class CommutingSquare {
 public:
  CommutingSquare(int omega_size, RealVector weights,
                  std::vector<std::vector<int>> partition_B,
                  std::vector<std::vector<int>> partition_C,
                  double tol = kDefaultTol);

  int omega() const { return omega_; }
  const RealVector& weights() const { return w_; }
  const std::vector<std::vector<int>>& partition_B() const { return pb_; }
  const std::vector<std::vector<int>>& partition_C() const { return pc_; }
  double tol() const { return tol_; }

  // weighted block-averaging maps as operators on functions
  const RealMatrix& E() const { return E_; }
  const RealMatrix& F() const { return F_; }
  const RealMatrix& G() const { return G_; }

  double state(const Vector& a) const;  // phi(a) = sum w a
  bool in_C(const Vector& c) const;
  bool in_B(const Vector& b) const;

  /// Uniform weights on an r x c grid, B = rows, C = columns.
  static CommutingSquare grid_uniform(int rows, int cols, double tol = kDefaultTol);
  /// Product weights u (x) v on an r x c grid; marginals are normalized.
  static CommutingSquare grid_product(const RealVector& u, const RealVector& v,
                                      double tol = kDefaultTol);

 private:
  int omega_;
  RealVector w_;
  std::vector<std::vector<int>> pb_, pc_;
  double tol_;
  RealMatrix E_, F_, G_;
};

// GNS data of the state: the weighted inner product space with cyclic
// vector xi = 1 and the multiplication representation.
struct GnsSpace {
  RealVector w;
  Vector xi;

  Complex inner(const Vector& a, const Vector& b) const {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) s += w(i) * std::conj(a(i)) * b(i);
    return s;
  }
  double norm(const Vector& a) const { return std::sqrt(std::real(inner(a, a))); }
  Matrix lambda(const Vector& a) const {
    Matrix m = Matrix::Zero(a.size(), a.size());
    m.diagonal() = a;
    return m;
  }
  /// Adjoint with respect to the weighted inner product.
  Matrix weighted_adjoint(const Matrix& op) const {
    Matrix winv = w.cwiseInverse().cast<Complex>().asDiagonal();
    Matrix wd = w.cast<Complex>().asDiagonal();
    return winv * op.adjoint() * wd;
  }
};

// Extensions of E, F, G to the GNS space: weighted-orthogonal projections
// onto the partition-constant and constant functions, with g = ef = fe.
struct JonesTriple {
  Matrix e, f, g;
};

/// Builds the GNS space and the three projections; verifies idempotency,
/// weighted self-adjointness, g = ef = fe, and the compression relations
/// g a g = G(a) g, e a e = E(a) e, f a f = F(a) f on all basis functions.
std::pair<GnsSpace, JonesTriple> gns(const CommutingSquare& sq);

struct QuasiBasis {
  std::vector<Vector> elements;  // u_i = indicator(i) / sqrt(w_i)
  double reconstruction_residual = 0.0;  // a = sum u_i G(u_i^* a)
  double partition_of_unity_residual = 0.0;  // sum u_i g u_i^* = 1
};

QuasiBasis quasi_basis(const CommutingSquare& sq);

struct KAlgebras {
  AlgebraPtr K_g, K_e, K_f;
  double multiplier_residual = 0.0;  // K_e K_g, K_g K_e, K_f K_g, K_g K_f in K_g
};

/// Spans of a proj a for the three projections; K_g must be the full
/// operator algebra (all compacts in finite dimension).
KAlgebras k_algebras(const CommutingSquare& sq);

/// Verifies e a f in K_g for basis a and e u f = u g for u in B, then
/// classifies (K_e, K_f, K_g) with the inclusion maps.
BlendVerdict blend_of_compacts(const CommutingSquare& sq);

struct MainInequalityResult {
  double lhs = 0.0;  // sum |e a c_i xi|^2
  double rhs = 0.0;  // |E(a* a)| |mu|
  Matrix mu;         // Gram matrix of the c_i xi
};

/// sum_i |e a c_i xi|^2 <= |E(a*a)| |mu| for c_i in C.
MainInequalityResult main_inequality(const CommutingSquare& sq, const Vector& a,
                                     const std::vector<Vector>& c_list);

/// Residual of (a g b^*)(eta) = <eta, b xi> a xi in the weighted norm.
double rank_one_formula(const CommutingSquare& sq, const Vector& a, const Vector& b,
                        const Vector& eta);

struct HilbertSchmidtResult {
  double hs_norm = 0.0;  // of e a f, with respect to the weighted inner product
  double bound = 0.0;    // |E(a* a)|^{1/2}
};

HilbertSchmidtResult hilbert_schmidt_bound(const CommutingSquare& sq, const Vector& a);

}  // namespace alloy
