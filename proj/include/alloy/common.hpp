#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace alloy {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// matrix / algebra level
struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct NotInSpan : Error { using Error::Error; };
struct BimoduleViolation : Error { using Error::Error; };
struct InvalidAlgebra : Error { using Error::Error; };
struct InvalidHomomorphism : Error { using Error::Error; };

// blend classification
struct NotInX : Error { using Error::Error; };
struct IntertwiningViolation : Error { using Error::Error; };

// two-point alloys
struct SingularDecomposition : Error { using Error::Error; };
struct MultiplicativityViolation : Error { using Error::Error; };

// conditional expectations
struct HConditionViolation : Error { using Error::Error; };
struct EquivalenceMismatch : Error { using Error::Error; };
struct NotFaithful : Error { using Error::Error; };

// polar decomposition of automorphisms
struct SpectrumOnCut : Error { using Error::Error; };
struct DefectiveOperator : Error { using Error::Error; };

// crossed products
struct NotInvolutive : Error { using Error::Error; };
struct NotStarAutomorphism : Error { using Error::Error; };
struct NotProjection : Error { using Error::Error; };

// commuting squares
struct NotCommutingSquare : Error { using Error::Error; };
struct MeetNotTrivial : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct MembershipFailure : Error { using Error::Error; };
struct CNotInC : Error { using Error::Error; };

// Residual scale used by all invariant checks: tol * (1 + magnitude).
inline double scaled_tol(double tol, double magnitude) {
  return tol * (1.0 + magnitude);
}

}  // namespace alloy
