#include "alloy/star_algebra.hpp"

#include <random>

namespace alloy {

namespace {

// Deterministic pair sampler for large-dimension invariant checks.
std::vector<std::pair<int, int>> check_pairs(int dim, int cap = 32) {
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

}  // namespace

std::vector<Matrix> orthonormalize_span(const std::vector<Matrix>& mats, int ambient_dim,
                                        double tol) {
  if (mats.empty()) return {};
  const Eigen::Index vec_len = static_cast<Eigen::Index>(ambient_dim) * ambient_dim;
  Matrix cols(vec_len, static_cast<Eigen::Index>(mats.size()));
  for (size_t k = 0; k < mats.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vectorize(mats[k]);

  std::vector<Matrix> out;
  if (cols.cols() > 4 * vec_len) {
    // very wide families: the left singular vectors are the eigenvectors of
    // the (small) outer Gram matrix
    Matrix gram = cols * cols.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const auto& lam = es.eigenvalues();
    double top = lam(lam.size() - 1);
    if (top <= 0.0) return out;
    for (Eigen::Index i = lam.size() - 1; i >= 0; --i) {
      if (lam(i) > tol * tol * top) {
        out.push_back(unvectorize(es.eigenvectors().col(i), ambient_dim, ambient_dim));
      }
    }
    return out;
  }

  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) {
      out.push_back(unvectorize(svd.matrixU().col(i), ambient_dim, ambient_dim));
    }
  }
  return out;
}

StarAlgebra::StarAlgebra(int ambient_dim, std::vector<Matrix> basis, bool unital, double tol)
    : n_(ambient_dim), basis_(std::move(basis)), unital_(unital), tol_(tol) {
  if (n_ <= 0) throw InvalidAlgebra("ambient dimension must be positive");
  if (basis_.empty()) throw InvalidAlgebra("basis must be nonempty");
  for (const auto& b : basis_) {
    if (b.rows() != n_ || b.cols() != n_) throw InvalidAlgebra("basis element has wrong shape");
    if (!b.allFinite()) throw InvalidAlgebra("basis element has non-finite entries");
  }
  vec_basis_.resize(static_cast<Eigen::Index>(n_) * n_, dim());
  for (int k = 0; k < dim(); ++k) vec_basis_.col(k) = vectorize(basis_[static_cast<size_t>(k)]);
  qr_ = Eigen::ColPivHouseholderQR<Matrix>(vec_basis_);

  validate();

  star_.resize(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    star_.col(k) = decompose(basis_[static_cast<size_t>(k)].adjoint());
  }
  if (unital_) id_coords_ = decompose(identity());
}

Matrix StarAlgebra::from_coords(const Vector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("from_coords: size mismatch");
  return unvectorize(vec_basis_ * c, n_, n_);
}

Vector StarAlgebra::decompose(const Matrix& x, double& residual) const {
  if (x.rows() != n_ || x.cols() != n_) throw std::invalid_argument("decompose: shape mismatch");
  Vector v = vectorize(x);
  Vector c = qr_.solve(v);
  residual = (vec_basis_ * c - v).norm();
  return c;
}

Vector StarAlgebra::decompose(const Matrix& x) const {
  double residual = 0.0;
  Vector c = decompose(x, residual);
  if (residual > scaled_tol(tol_, x.norm())) {
    throw NotInSpan("decompose: residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return c;
}

bool StarAlgebra::contains(const Matrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) return false;
  double residual = 0.0;
  decompose(x, residual);
  return residual <= scaled_tol(tol_, x.norm());
}

Vector StarAlgebra::multiply(const Vector& u, const Vector& v) const {
  return decompose(from_coords(u) * from_coords(v));
}

Vector StarAlgebra::adjoint_coords(const Vector& u) const { return star_ * u.conjugate(); }

Vector StarAlgebra::identity_coords() const {
  if (!unital_) throw InvalidAlgebra("identity_coords: algebra is not unital");
  return id_coords_;
}

double StarAlgebra::smallest_basis_singular_value() const {
  return smallest_singular_value(vec_basis_);
}

void StarAlgebra::validate() const {
  if (smallest_basis_singular_value() <= tol_) {
    throw InvalidAlgebra("basis is not linearly independent at tolerance");
  }
  double residual = 0.0;
  for (const auto& [i, j] : check_pairs(dim())) {
    Matrix prod = basis_[static_cast<size_t>(i)] * basis_[static_cast<size_t>(j)];
    decompose(prod, residual);
    if (residual > scaled_tol(tol_, prod.norm())) {
      throw InvalidAlgebra("basis is not multiplicatively closed");
    }
  }
  for (const auto& b : basis_) {
    decompose(b.adjoint(), residual);
    if (residual > scaled_tol(tol_, b.norm())) {
      throw InvalidAlgebra("basis is not *-closed");
    }
  }
  if (unital_) {
    decompose(identity(), residual);
    if (residual > scaled_tol(tol_, std::sqrt(static_cast<double>(n_)))) {
      throw InvalidAlgebra("identity is not in the span of a unital algebra");
    }
  }
}

StarAlgebra StarAlgebra::generated_by(int ambient_dim, const std::vector<Matrix>& gens,
                                      bool unital, double tol) {
  std::vector<Matrix> span = gens;
  if (unital) span.push_back(Matrix::Identity(ambient_dim, ambient_dim));
  if (span.empty()) throw InvalidAlgebra("generated_by: no generators and not unital");
  span = orthonormalize_span(span, ambient_dim, tol);
  const size_t full = static_cast<size_t>(ambient_dim) * static_cast<size_t>(ambient_dim);
  while (span.size() < full) {
    std::vector<Matrix> next = span;
    for (const auto& x : span) next.push_back(x.adjoint());
    for (const auto& x : span)
      for (const auto& y : span) next.push_back(x * y);
    next = orthonormalize_span(next, ambient_dim, tol);
    if (next.size() == span.size()) {
      span = std::move(next);
      break;
    }
    span = std::move(next);
  }
  return StarAlgebra(ambient_dim, span, unital, tol);
}

AlgebraPtr diagonal_algebra(int d, double tol) {
  std::vector<Matrix> basis;
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  return std::make_shared<StarAlgebra>(d, std::move(basis), true, tol);
}

AlgebraPtr full_matrix_algebra(int n, double tol) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  return std::make_shared<StarAlgebra>(n, std::move(basis), true, tol);
}

AlgebraPtr block_sum_algebra(const std::vector<int>& block_sizes, double tol) {
  int n = 0;
  for (int s : block_sizes) n += s;
  std::vector<Matrix> basis;
  int off = 0;
  for (int s : block_sizes) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(off + i, off + j) = 1.0;
        basis.push_back(e);
      }
    off += s;
  }
  return std::make_shared<StarAlgebra>(n, std::move(basis), true, tol);
}

AlgebraPtr scalar_algebra(int ambient_dim, double tol) {
  std::vector<Matrix> basis{Matrix::Identity(ambient_dim, ambient_dim)};
  return std::make_shared<StarAlgebra>(ambient_dim, std::move(basis), true, tol);
}

StarHom::StarHom(AlgebraPtr domain, AlgebraPtr codomain, Matrix coeff, bool unital)
    : dom_(std::move(domain)), cod_(std::move(codomain)), coeff_(std::move(coeff)),
      unital_(unital) {
  if (coeff_.rows() != cod_->dim() || coeff_.cols() != dom_->dim()) {
    throw InvalidHomomorphism("coefficient matrix shape mismatch");
  }
  validate();
}

Matrix StarHom::apply(const Matrix& x) const {
  return cod_->from_coords(coeff_ * dom_->decompose(x));
}

void StarHom::validate() const {
  const double tol = std::max(dom_->tol(), cod_->tol());
  // images of the domain basis as codomain ambient matrices
  std::vector<Matrix> img(static_cast<size_t>(dom_->dim()));
  for (int k = 0; k < dom_->dim(); ++k) {
    img[static_cast<size_t>(k)] = cod_->from_coords(coeff_.col(k));
  }
  for (const auto& [i, j] : check_pairs(dom_->dim())) {
    Matrix prod_dom = dom_->basis(i) * dom_->basis(j);
    Vector lhs = coeff_ * dom_->decompose(prod_dom);
    Matrix prod_img = img[static_cast<size_t>(i)] * img[static_cast<size_t>(j)];
    Matrix diff = cod_->from_coords(lhs) - prod_img;
    if (diff.norm() > scaled_tol(tol, prod_img.norm())) {
      throw InvalidHomomorphism("map is not multiplicative on basis pair");
    }
  }
  // f(x^*) = f(x)^*, expressed on coefficient matrices
  Matrix star_residual = coeff_ * dom_->star_matrix() - cod_->star_matrix() * coeff_.conjugate();
  if (star_residual.norm() > scaled_tol(tol, coeff_.norm())) {
    throw InvalidHomomorphism("map is not *-preserving");
  }
  if (unital_) {
    Vector lhs = coeff_ * dom_->identity_coords();
    Vector rhs = cod_->identity_coords();
    if ((lhs - rhs).norm() > scaled_tol(tol, rhs.norm())) {
      throw InvalidHomomorphism("map does not preserve the unit");
    }
  }
}

StarHom StarHom::identity(const AlgebraPtr& alg) {
  return StarHom(alg, alg, Matrix::Identity(alg->dim(), alg->dim()), alg->unital());
}

AlgebraPtr image_algebra(const StarHom& f) {
  std::vector<Matrix> img;
  for (int k = 0; k < f.domain().dim(); ++k) {
    img.push_back(f.codomain().from_coords(f.coeff().col(k)));
  }
  auto onb = orthonormalize_span(img, f.codomain().ambient_dim(), f.codomain().tol());
  return std::make_shared<StarAlgebra>(f.codomain().ambient_dim(), std::move(onb),
                                       f.unital(), f.codomain().tol());
}

TraceExpectation::TraceExpectation(AlgebraPtr sub, AlgebraPtr whole)
    : sub_(std::move(sub)), whole_(std::move(whole)) {
  if (sub_->ambient_dim() != whole_->ambient_dim()) {
    throw BimoduleViolation("trace expectation: ambient dimensions differ");
  }
  if (!sub_->unital() || !whole_->unital()) {
    throw BimoduleViolation("trace expectation: both algebras must be unital");
  }
  for (const auto& b : sub_->basis()) {
    if (!whole_->contains(b)) {
      throw BimoduleViolation("trace expectation: sub is not contained in the whole algebra");
    }
  }
  onb_ = orthonormalize_span(sub_->basis(), sub_->ambient_dim(), sub_->tol());

  const double tol = whole_->tol();
  // identity on sub
  for (const auto& b : sub_->basis()) {
    if ((apply(b) - b).norm() > scaled_tol(tol, b.norm())) {
      throw BimoduleViolation("trace expectation is not the identity on the subalgebra");
    }
  }
  // bimodule property on basis triples
  const int ds = sub_->dim();
  const int dw = whole_->dim();
  auto pairs = check_pairs(ds);
  long budget = 20000;
  for (const auto& [i, j] : pairs) {
    for (int m = 0; m < dw && budget > 0; ++m, --budget) {
      const Matrix& a = sub_->basis(i);
      const Matrix& b = sub_->basis(j);
      const Matrix& x = whole_->basis(m);
      Matrix lhs = apply(a * x * b);
      Matrix rhs = a * apply(x) * b;
      if ((lhs - rhs).norm() > scaled_tol(tol, lhs.norm() + rhs.norm())) {
        throw BimoduleViolation("trace expectation violates the bimodule property");
      }
    }
  }
}

Matrix TraceExpectation::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& s : onb_) {
    Complex coef = (s.adjoint() * x).trace();
    out += coef * s;
  }
  return out;
}

TraceExpectation trace_conditional_expectation(AlgebraPtr sub, AlgebraPtr whole) {
  return TraceExpectation(std::move(sub), std::move(whole));
}

}  // namespace alloy
