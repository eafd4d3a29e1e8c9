#pragma once

#include <cstdint>
#include <random>

#include "alloy/common.hpp"

namespace alloy {

// Seeded generator used by all sampling code.  Gaussian variates come from
// an explicit Box-Muller transform so that identical seeds give identical
// streams on every platform (the standard leaves normal_distribution's
// algorithm unspecified).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex cgaussian() { return Complex(gaussian(), gaussian()) / std::sqrt(2.0); }

  Vector cgaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = cgaussian();
    return v;
  }

  Matrix cgaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cgaussian();
    return m;
  }

  Matrix hermitian(int n) {
    Matrix m = cgaussian_matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }

  // Haar-ish unitary: QR of a Gaussian matrix with the R-diagonal phases fixed.
  Matrix unitary(int n) {
    Matrix m = cgaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      Complex d = r(i, i);
      q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace alloy
