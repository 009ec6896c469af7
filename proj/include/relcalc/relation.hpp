#pragma once

#include <optional>

#include "relcalc/subspace.hpp"

namespace relcalc {

/// A linear relation T in X x X with X = C^n, stored as an orthonormal
/// frame of its graph in C^{2n}. Rows 0..n-1 of the basis are the x-part,
/// rows n..2n-1 the f-part. Operators are identified with their graphs.
///
/// Inner products are linear in the first argument and conjugate-linear in
/// the second: <u, v> = v^H u.
class Relation {
 public:
  /// The trivial relation {(0, 0)} on C^n.
  explicit Relation(Index n);
  /// Wraps a graph frame of ambient dimension 2n.
  explicit Relation(Frame graph);

  static Relation trivial(Index n) { return Relation(n); }

  Index n() const { return n_; }
  /// dim of the graph.
  Index dim() const { return graph_.rank(); }
  const Frame& graph() const { return graph_; }

  auto x_block() const { return graph_.basis().topRows(n_); }
  auto f_block() const { return graph_.basis().bottomRows(n_); }

  /// (x, f) in T, within the containment tolerance.
  bool contains(const Vector& x, const Vector& f, const TolerancePolicy& tol) const;

 private:
  Index n_;
  Frame graph_;
};

/// Graph {(x, Mx) : x in domain}; the whole space when `domain` is empty.
Relation from_operator(const Matrix& m, const std::optional<Frame>& domain,
                       const TolerancePolicy& tol);
/// Span of the given 2n x k generator columns.
Relation from_generators(const Matrix& generators, const TolerancePolicy& tol);
/// {(x, x)}.
Relation identity_relation(Index n);

struct Parts {
  Frame domain;
  Frame range;
  Frame null;
  Frame mv;  ///< multivalued part T(0)
};

Parts parts(const Relation& t, const TolerancePolicy& tol);
Frame domain_of(const Relation& t, const TolerancePolicy& tol);
Frame range_of(const Relation& t, const TolerancePolicy& tol);
Frame null_of(const Relation& t, const TolerancePolicy& tol);
Frame mv_part(const Relation& t, const TolerancePolicy& tol);

Relation inverse(const Relation& t);
Relation scalar_mul(Complex alpha, const Relation& t, const TolerancePolicy& tol);
/// T + S = {(x, f + g) : (x, f) in T, (x, g) in S}.
Relation op_sum(const Relation& t, const Relation& s, const TolerancePolicy& tol);
/// ST = {(x, g) : (x, f) in T, (f, g) in S for some f}.
Relation compose(const Relation& s, const Relation& t, const TolerancePolicy& tol);
/// T - lambda I.
Relation shift(const Relation& t, Complex lambda, const TolerancePolicy& tol);
Relation adjoint(const Relation& t);

/// {(x, f, g) : (x, f) in T, (x, g) in S} as a subspace of C^{3n}.
Frame paired_graph(const Relation& t, const Relation& s, const TolerancePolicy& tol);

/// Graph equality as subspaces of C^{2n}.
bool same_relation(const Relation& a, const Relation& b, const TolerancePolicy& tol);

struct Classification {
  bool is_operator = false;
  bool is_densely_defined = false;
  bool is_hermitian = false;
  bool is_selfadjoint = false;
};

Classification classify(const Relation& t, const TolerancePolicy& tol);
bool is_hermitian(const Relation& t, const TolerancePolicy& tol);
bool is_selfadjoint(const Relation& t, const TolerancePolicy& tol);

/// T(x) as an affine set: one representative y with (x, y) in T (minimum norm),
/// or nullopt when x is not in D(T).
std::optional<Vector> some_image(const Relation& t, const Vector& x, const TolerancePolicy& tol);

void require_same_n(const Relation& a, const Relation& b, const char* what);

}  // namespace relcalc
