#pragma once

#include <cstdint>
#include <vector>

#include "relcalc/relation.hpp"

namespace relcalc {

/// R(T - lambda I)^perp.
Frame deficiency_space(const Relation& t, Complex lambda, const TolerancePolicy& tol);
Index deficiency_index(const Relation& t, Complex lambda, const TolerancePolicy& tol);

struct DeficiencySample {
  Complex lambda;
  Index index = 0;
};

struct DeficiencyReport {
  std::vector<DeficiencySample> samples;  ///< +i, -i, then the random half-plane points
  Index d_plus = 0;
  Index d_minus = 0;
  bool constancy_ok = false;
};

/// Nonreal sample points: `per_half_plane` in each open half-plane with
/// |Re| <= 10 and 0.1 <= |Im| <= 10, upper half-plane first.
std::vector<Complex> half_plane_samples(int per_half_plane, std::uint64_t seed);

/// Deficiency indices of a Hermitian relation, read at +-i, together with a
/// constancy check over random points of both half-planes.
/// Throws HypothesisError for non-Hermitian input or sample_count < 1.
DeficiencyReport deficiency_indices(const Relation& t, int sample_count, std::uint64_t seed,
                                    const TolerancePolicy& tol);

/// Per-point indices with no Hermitian requirement and no constancy claim.
std::vector<DeficiencySample> deficiency_profile(const Relation& t,
                                                 const std::vector<Complex>& lambdas,
                                                 const TolerancePolicy& tol);

/// | ||(T - zI)(x)||^2 - ||(T - aI)(x)||^2 - b^2 ||x||^2 | for z = a + ib and x in D(T).
/// Vanishes for Hermitian T.
double shifted_norm_residual(const Relation& t, const Vector& x, Complex z,
                             const TolerancePolicy& tol);

/// ||(T - zI)^{-1}||; bounded by 1/|Im z| for Hermitian T and nonreal z.
double resolvent_norm(const Relation& t, Complex z, const TolerancePolicy& tol);

}  // namespace relcalc
