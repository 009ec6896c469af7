#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relcalc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thresholds shared by every rank decision and subspace comparison.
///
/// A singular value counts toward the rank when it exceeds
/// `scale * rank_rtol * max(rows, cols)`, where `scale` is the largest
/// singular value (or a caller-supplied reference scale, whichever is
/// larger). A subspace F1 is contained in F2 when the sine of the largest
/// principal angle of F1 against F2 is at most `containment_tol`.
struct TolerancePolicy {
  double rank_rtol = 1e-10;
  double cmp_atol = 1e-9;
  double containment_tol = 1e-8;

  /// Throws std::invalid_argument unless all fields are finite and >= 0.
  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible ambient spaces or vectors have the wrong length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A vector is not (numerically) in the domain of a relation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs that violate its mathematical precondition.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The shifted-certificate transform is undefined for b >= 1.
class TransformError : public Error {
 public:
  using Error::Error;
};

}  // namespace relcalc
