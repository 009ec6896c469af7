#pragma once

#include "relcalc/relation.hpp"

namespace relcalc {

/// E^perp-representative of the coset [v] = v + E.
Vector quotient_rep(const Vector& v, const Frame& e);

/// <[x], [y]> on X / E, computed through representatives.
Complex quotient_inner(const Vector& x, const Vector& y, const Frame& e);

/// The single-valued part of a relation: x in D(T) maps to the unique
/// element of T(x) lying in T(0)^perp.
///
/// `matrix()` acts on coordinates with respect to `domain().basis()`;
/// `standard_matrix()` is the same map on C^n after projecting onto D(T).
class OperatorPart {
 public:
  OperatorPart(Frame domain, Frame mv, Matrix matrix)
      : domain_(std::move(domain)), mv_(std::move(mv)), matrix_(std::move(matrix)) {}

  const Frame& domain() const { return domain_; }
  const Frame& mv() const { return mv_; }
  const Matrix& matrix() const { return matrix_; }
  Matrix standard_matrix() const { return matrix_ * domain_.basis().adjoint(); }
  /// Image of (the projection onto D(T) of) x.
  Vector apply(const Vector& x) const { return matrix_ * (domain_.basis().adjoint() * x); }

 private:
  Frame domain_;
  Frame mv_;
  Matrix matrix_;
};

OperatorPart operator_part(const Relation& t, const TolerancePolicy& tol);

/// ||T(x)||: distance from T(x) to 0. Throws DomainError unless x lies in D(T)
/// to within the containment tolerance; near-members are projected onto D(T).
double norm_at(const Relation& t, const Vector& x, const TolerancePolicy& tol);
double norm_at(const OperatorPart& part, const Vector& x, const TolerancePolicy& tol);

/// ||T|| = sup of ||T(x)|| over the unit ball of D(T).
double relation_norm(const Relation& t, const TolerancePolicy& tol);

}  // namespace relcalc
