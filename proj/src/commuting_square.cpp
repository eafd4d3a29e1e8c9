#include "alloy/commuting_square.hpp"

#include <functional>
#include <numeric>

namespace alloy {

namespace {

std::vector<int> find_roots(int n, const std::vector<std::vector<int>>& pb,
                            const std::vector<std::vector<int>>& pc) {
  // union-find over points, merging within every block of both partitions
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
  for (const auto& blk : pb)
    for (size_t i = 1; i < blk.size(); ++i) unite(blk[i], blk[0]);
  for (const auto& blk : pc)
    for (size_t i = 1; i < blk.size(); ++i) unite(blk[i], blk[0]);
  std::vector<int> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = find(i);
  return roots;
}

RealMatrix averaging_map(int n, const RealVector& w,
                         const std::vector<std::vector<int>>& part) {
  RealMatrix m = RealMatrix::Zero(n, n);
  for (const auto& blk : part) {
    double total = 0.0;
    for (int i : blk) total += w(i);
    for (int i : blk)
      for (int j : blk) m(i, j) = w(j) / total;
  }
  return m;
}

void validate_partition(int n, const std::vector<std::vector<int>>& part) {
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (const auto& blk : part) {
    if (blk.empty()) throw std::invalid_argument("partition has an empty block");
    for (int i : blk) {
      if (i < 0 || i >= n || seen[static_cast<size_t>(i)]) {
        throw std::invalid_argument("partition is not a partition of the point set");
      }
      seen[static_cast<size_t>(i)] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("partition does not cover the point set");
  }
}

}  // namespace

CommutingSquare::CommutingSquare(int omega_size, RealVector weights,
                                 std::vector<std::vector<int>> partition_B,
                                 std::vector<std::vector<int>> partition_C, double tol)
    : omega_(omega_size), w_(std::move(weights)), pb_(std::move(partition_B)),
      pc_(std::move(partition_C)), tol_(tol) {
  if (omega_ <= 0 || w_.size() != omega_) {
    throw std::invalid_argument("commuting square: bad weight vector");
  }
  if (w_.minCoeff() <= 0.0) throw std::invalid_argument("weights must be positive");
  if (std::abs(w_.sum() - 1.0) > scaled_tol(tol_, 1.0)) {
    throw std::invalid_argument("weights must sum to one");
  }
  validate_partition(omega_, pb_);
  validate_partition(omega_, pc_);

  E_ = averaging_map(omega_, w_, pb_);
  F_ = averaging_map(omega_, w_, pc_);
  if ((E_ * F_ - F_ * E_).norm() > scaled_tol(tol_, 1.0)) {
    throw NotCommutingSquare("averaging maps do not commute");
  }
  G_ = E_ * F_;

  // D = B n C must be the constants: the two partitions generate a
  // connected block graph
  auto roots = find_roots(omega_, pb_, pc_);
  for (int i = 1; i < omega_; ++i) {
    if (roots[static_cast<size_t>(i)] != roots[0]) {
      throw MeetNotTrivial("B and C meet in more than the constants");
    }
  }
  // and then G is the state: G = 1 w^T
  RealMatrix expected = RealVector::Ones(omega_) * w_.transpose();
  if ((G_ - expected).norm() > scaled_tol(tol_, 1.0)) {
    throw NotCommutingSquare("joint expectation is not the state projection");
  }
}

double CommutingSquare::state(const Vector& a) const {
  Complex s = 0.0;
  for (int i = 0; i < omega_; ++i) s += w_(i) * a(i);
  return std::real(s);
}

bool CommutingSquare::in_C(const Vector& c) const {
  Vector avg = F_.cast<Complex>() * c;
  return (avg - c).norm() <= scaled_tol(tol_, c.norm());
}

bool CommutingSquare::in_B(const Vector& b) const {
  Vector avg = E_.cast<Complex>() * b;
  return (avg - b).norm() <= scaled_tol(tol_, b.norm());
}

CommutingSquare CommutingSquare::grid_uniform(int rows, int cols, double tol) {
  RealVector u = RealVector::Constant(rows, 1.0 / rows);
  RealVector v = RealVector::Constant(cols, 1.0 / cols);
  return grid_product(u, v, tol);
}

CommutingSquare CommutingSquare::grid_product(const RealVector& u, const RealVector& v,
                                              double tol) {
  const int rows = static_cast<int>(u.size());
  const int cols = static_cast<int>(v.size());
  if (rows == 0 || cols == 0 || u.minCoeff() <= 0.0 || v.minCoeff() <= 0.0) {
    throw std::invalid_argument("grid_product: marginals must be positive");
  }
  const int n = rows * cols;
  RealVector un = u / u.sum();
  RealVector vn = v / v.sum();
  RealVector w(n);
  std::vector<std::vector<int>> pb(static_cast<size_t>(rows)), pc(static_cast<size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int idx = r * cols + c;
      w(idx) = un(r) * vn(c);
      pb[static_cast<size_t>(r)].push_back(idx);
      pc[static_cast<size_t>(c)].push_back(idx);
    }
  }
  return CommutingSquare(n, std::move(w), std::move(pb), std::move(pc), tol);
}

std::pair<GnsSpace, JonesTriple> gns(const CommutingSquare& sq) {
  const int n = sq.omega();
  const double tol = sq.tol();
  GnsSpace m{sq.weights(), Vector::Ones(n)};
  JonesTriple jt{sq.E().cast<Complex>(), sq.F().cast<Complex>(), sq.G().cast<Complex>()};

  auto check = [&](double res, const char* what) {
    if (res > scaled_tol(tol, 1.0)) {
      throw NotCommutingSquare(std::string("gns: ") + what);
    }
  };
  for (const Matrix* op : {&jt.e, &jt.f, &jt.g}) {
    check((*op * *op - *op).norm(), "projection is not idempotent");
    check((m.weighted_adjoint(*op) - *op).norm(), "projection is not weighted self-adjoint");
  }
  check((jt.e * jt.f - jt.g).norm(), "g != ef");
  check((jt.f * jt.e - jt.g).norm(), "g != fe");
  check((jt.e * m.xi - m.xi).norm(), "e does not fix xi");
  check((jt.f * m.xi - m.xi).norm(), "f does not fix xi");
  check((jt.g * m.xi - m.xi).norm(), "g does not fix xi");

  for (int i = 0; i < n; ++i) {
    Vector a = Vector::Zero(n);
    a(i) = 1.0;
    Matrix la = m.lambda(a);
    Matrix lea = m.lambda(sq.E().cast<Complex>() * a);
    Matrix lfa = m.lambda(sq.F().cast<Complex>() * a);
    Matrix lga = m.lambda(sq.G().cast<Complex>() * a);
    check((jt.g * la * jt.g - lga * jt.g).norm(), "g a g != G(a) g");
    check((jt.e * la * jt.e - lea * jt.e).norm(), "e a e != E(a) e");
    check((jt.f * la * jt.f - lfa * jt.f).norm(), "f a f != F(a) f");
    check((jt.f * la * m.xi - lfa * m.xi).norm(), "f a xi != F(a) xi");
  }
  return {std::move(m), std::move(jt)};
}

QuasiBasis quasi_basis(const CommutingSquare& sq) {
  const int n = sq.omega();
  auto [m, jt] = gns(sq);
  QuasiBasis qb;
  for (int i = 0; i < n; ++i) {
    Vector u = Vector::Zero(n);
    u(i) = 1.0 / std::sqrt(sq.weights()(i));
    qb.elements.push_back(u);
  }
  // a = sum_i u_i G(u_i^* a) on all basis functions
  double rec = 0.0;
  for (int j = 0; j < n; ++j) {
    Vector a = Vector::Zero(n);
    a(j) = 1.0;
    Vector recon = Vector::Zero(n);
    for (const auto& u : qb.elements) {
      Vector prod = u.conjugate().cwiseProduct(a);
      Vector gval = sq.G().cast<Complex>() * prod;  // constant function
      recon += gval(0) * u;
    }
    rec = std::max(rec, (recon - a).norm());
  }
  qb.reconstruction_residual = rec;

  Matrix sum = Matrix::Zero(n, n);
  for (const auto& u : qb.elements) {
    sum += m.lambda(u) * jt.g * m.lambda(u.conjugate());
  }
  qb.partition_of_unity_residual = (sum - Matrix::Identity(n, n)).norm();
  return qb;
}

KAlgebras k_algebras(const CommutingSquare& sq) {
  const int n = sq.omega();
  const double tol = sq.tol();
  auto [m, jt] = gns(sq);

  auto span_of = [&](const Matrix& proj) {
    std::vector<Matrix> gens;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Vector a = Vector::Zero(n), b = Vector::Zero(n);
        a(i) = 1.0;
        b(j) = 1.0;
        gens.push_back(m.lambda(a) * proj * m.lambda(b));
      }
    }
    return StarAlgebra::generated_by(n, gens, false, tol);
  };

  KAlgebras out;
  out.K_g = std::make_shared<StarAlgebra>(span_of(jt.g));
  out.K_e = std::make_shared<StarAlgebra>(span_of(jt.e));
  out.K_f = std::make_shared<StarAlgebra>(span_of(jt.f));

  if (out.K_g->dim() != n * n) {
    throw DimensionMismatch("K_g is not the full operator algebra");
  }

  double worst = 0.0;
  // exhaustive on small algebras, deterministic sampling beyond
  auto contain = [&](const StarAlgebra& left, const StarAlgebra& right) {
    const long pairs = static_cast<long>(left.dim()) * right.dim();
    std::mt19937_64 eng(0x5eedu);
    const long budget = 2048;
    for (long s = 0; s < std::min(pairs, budget); ++s) {
      int i, j;
      if (pairs <= budget) {
        i = static_cast<int>(s % left.dim());
        j = static_cast<int>(s / left.dim());
      } else {
        i = static_cast<int>(eng() % static_cast<std::uint64_t>(left.dim()));
        j = static_cast<int>(eng() % static_cast<std::uint64_t>(right.dim()));
      }
      const Matrix& x = left.basis(i);
      const Matrix& y = right.basis(j);
      double r1 = 0.0, r2 = 0.0;
      out.K_g->decompose(x * y, r1);
      out.K_g->decompose(y * x, r2);
      worst = std::max(worst, std::max(r1, r2));
    }
  };
  contain(*out.K_e, *out.K_g);
  contain(*out.K_f, *out.K_g);
  out.multiplier_residual = worst;
  return out;
}

BlendVerdict blend_of_compacts(const CommutingSquare& sq) {
  const int n = sq.omega();
  auto [m, jt] = gns(sq);
  KAlgebras ks = k_algebras(sq);

  // e a f lands in K_g for every basis function a
  for (int i = 0; i < n; ++i) {
    Vector a = Vector::Zero(n);
    a(i) = 1.0;
    Matrix op = jt.e * m.lambda(a) * jt.f;
    if (!ks.K_g->contains(op)) {
      throw MembershipFailure("e a f escapes K_g for a basis function");
    }
  }
  // e u f = u g for functions u constant on the B-partition
  for (const auto& blk : sq.partition_B()) {
    Vector u = Vector::Zero(n);
    for (int i : blk) u(i) = 1.0;
    Matrix lhs = jt.e * m.lambda(u) * jt.f;
    Matrix rhs = m.lambda(u) * jt.g;
    if ((lhs - rhs).norm() > scaled_tol(sq.tol(), rhs.norm())) {
      throw MembershipFailure("e u f != u g for a B-constant function");
    }
  }

  auto inclusion = [&](const AlgebraPtr& sub) {
    Matrix coeff(ks.K_g->dim(), sub->dim());
    for (int k = 0; k < sub->dim(); ++k) coeff.col(k) = ks.K_g->decompose(sub->basis(k));
    return StarHom(sub, ks.K_g, coeff, false);
  };
  BlendQuintuple q(ks.K_e, ks.K_f, ks.K_g, inclusion(ks.K_e), inclusion(ks.K_f));
  return classify(q);
}

MainInequalityResult main_inequality(const CommutingSquare& sq, const Vector& a,
                                     const std::vector<Vector>& c_list) {
  auto [m, jt] = gns(sq);
  for (const auto& c : c_list) {
    if (!sq.in_C(c)) throw CNotInC("main inequality: a listed function is not in C");
  }
  MainInequalityResult out;
  const auto k = static_cast<Eigen::Index>(c_list.size());
  out.mu = Matrix(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      out.mu(i, j) = m.inner(c_list[static_cast<size_t>(i)], c_list[static_cast<size_t>(j)]);

  double lhs = 0.0;
  for (const auto& c : c_list) {
    Vector v = jt.e * a.cwiseProduct(c);  // e a c xi with xi = 1
    lhs += std::real(m.inner(v, v));
  }
  out.lhs = lhs;

  Vector asa = a.conjugate().cwiseProduct(a);
  Vector easa = sq.E().cast<Complex>() * asa;
  double e_norm = easa.cwiseAbs().maxCoeff();
  out.rhs = e_norm * operator_norm(out.mu);
  return out;
}

double rank_one_formula(const CommutingSquare& sq, const Vector& a, const Vector& b,
                        const Vector& eta) {
  auto [m, jt] = gns(sq);
  Vector lhs = m.lambda(a) * jt.g * m.lambda(b.conjugate()) * eta;
  // <eta, b xi> a xi, with the pairing linear in eta
  Vector rhs = m.inner(b, eta) * a;
  return m.norm(lhs - rhs);
}

HilbertSchmidtResult hilbert_schmidt_bound(const CommutingSquare& sq, const Vector& a) {
  auto [m, jt] = gns(sq);
  HilbertSchmidtResult out;
  // weighted-orthonormal basis of the range of f: normalized C-block indicators
  double hs2 = 0.0;
  for (const auto& blk : sq.partition_C()) {
    double total = 0.0;
    for (int i : blk) total += sq.weights()(i);
    Vector eta = Vector::Zero(sq.omega());
    for (int i : blk) eta(i) = 1.0 / std::sqrt(total);
    Vector img = jt.e * a.cwiseProduct(eta);
    hs2 += std::real(m.inner(img, img));
  }
  out.hs_norm = std::sqrt(hs2);
  Vector easa = sq.E().cast<Complex>() * a.conjugate().cwiseProduct(a);
  out.bound = std::sqrt(easa.cwiseAbs().maxCoeff());
  return out;
}

}  // namespace alloy
