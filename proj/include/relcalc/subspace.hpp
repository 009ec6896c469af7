#pragma once

#include <span>
#include <vector>

#include "relcalc/types.hpp"

namespace relcalc {

/// Orthonormal basis of a subspace of C^d.
///
/// The basis is only meaningful up to a unitary mixing of its columns, so
/// two frames are compared through their projectors (see compare()), never
/// through their basis matrices. A frame may have rank 0.
class Frame {
 public:
  /// The zero subspace of C^d.
  explicit Frame(Index ambient_dim);

  /// Wraps a d x r matrix whose columns are already orthonormal.
  /// Throws DimensionError when `basis^H basis` differs from I by more than `atol`.
  Frame(Matrix basis, double atol);

  static Frame zero(Index ambient_dim) { return Frame(ambient_dim); }
  static Frame full(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index rank() const { return basis_.cols(); }
  bool empty() const { return basis_.cols() == 0; }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace (d x d).
  Matrix projector() const;
  /// P v without forming the projector.
  Vector project(const Vector& v) const;

 private:
  struct Unchecked {};
  Frame(Matrix basis, Unchecked);
  friend Frame adopt_orthonormal(Matrix basis);

  Index ambient_dim_;
  Matrix basis_;
};

/// Builds a frame from columns known to be orthonormal (internal fast path).
Frame adopt_orthonormal(Matrix basis);

/// Singular values above this are counted toward the rank.
double rank_cutoff(double sigma_max, Index rows, Index cols, const TolerancePolicy& tol,
                   double reference_scale = 0.0);

/// Orthonormal basis for the column span of `generators` (d x k).
///
/// `reference_scale` sets a floor for the magnitude against which small
/// singular values are judged; pass 1 when the generators are blocks of an
/// orthonormal basis so pure round-off never counts as a direction.
Frame orthonormalize(const Matrix& generators, const TolerancePolicy& tol,
                     double reference_scale = 0.0);

/// Same, from a list of vectors. Throws DimensionError on inconsistent lengths.
Frame orthonormalize(std::span<const Vector> vectors, Index ambient_dim,
                     const TolerancePolicy& tol);

/// Orthonormal basis of ker(A), A being m x k. Result lives in C^k.
Frame kernel(const Matrix& a, const TolerancePolicy& tol, double reference_scale = 0.0);

Frame complement(const Frame& f);
Frame intersect(const Frame& f1, const Frame& f2, const TolerancePolicy& tol);
Frame span_sum(const Frame& f1, const Frame& f2, const TolerancePolicy& tol);

/// ||v - P_F v||.
double distance(const Vector& v, const Frame& f);

/// Sine of the largest principal angle of `f1` measured against `f2`
/// (0 when f1 is contained in f2, 1 when some direction of f1 is orthogonal to f2).
double containment_sine(const Frame& f1, const Frame& f2);

/// ||P_F1 - P_F2|| in the operator norm.
double gap(const Frame& f1, const Frame& f2);

struct Comparison {
  bool is_subset = false;  ///< f1 is contained in f2
  bool is_equal = false;
  double gap = 0.0;
};

Comparison compare(const Frame& f1, const Frame& f2, const TolerancePolicy& tol);

bool is_subset(const Frame& f1, const Frame& f2, const TolerancePolicy& tol);
bool same_subspace(const Frame& f1, const Frame& f2, const TolerancePolicy& tol);

/// Largest eigenvalue of a Hermitian matrix (−inf for an empty matrix).
double max_eigenvalue(const Matrix& hermitian);
/// Largest singular value (0 for an empty matrix).
double spectral_norm(const Matrix& m);

void require_same_ambient(const Frame& f1, const Frame& f2, const char* what);

}  // namespace relcalc
