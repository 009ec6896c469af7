#include "relcalc/relation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relcalc {

Relation::Relation(Index n) : n_(n), graph_(2 * n) {
  if (n <= 0) throw DimensionError("relation ambient dimension must be positive");
}

Relation::Relation(Frame graph) : n_(graph.ambient_dim() / 2), graph_(std::move(graph)) {
  if (graph_.ambient_dim() <= 0 || graph_.ambient_dim() % 2 != 0) {
    throw DimensionError("relation graph must live in C^{2n} with n >= 1");
  }
}

bool Relation::contains(const Vector& x, const Vector& f, const TolerancePolicy& tol) const {
  if (x.size() != n_ || f.size() != n_) throw DimensionError("pair length does not match relation");
  Vector pair(2 * n_);
  pair << x, f;
  return distance(pair, graph_) <= tol.containment_tol * std::max(1.0, pair.norm());
}

void require_same_n(const Relation& a, const Relation& b, const char* what) {
  if (a.n() != b.n()) {
    throw DimensionError(std::string(what) + ": relations act on different spaces (" +
                         std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
  }
}

Relation from_operator(const Matrix& m, const std::optional<Frame>& domain,
                       const TolerancePolicy& tol) {
  const Index n = m.rows();
  if (n == 0 || m.cols() != n) throw DimensionError("operator matrix must be square and nonempty");
  const Frame dom = domain ? *domain : Frame::full(n);
  if (dom.ambient_dim() != n) throw DimensionError("operator domain lives in the wrong space");
  Matrix gens(2 * n, dom.rank());
  gens << dom.basis(), m * dom.basis();
  return Relation(orthonormalize(gens, tol));
}

Relation from_generators(const Matrix& generators, const TolerancePolicy& tol) {
  if (generators.rows() == 0 || generators.rows() % 2 != 0) {
    throw DimensionError("relation generators must have 2n rows with n >= 1");
  }
  return Relation(orthonormalize(generators, tol));
}

Relation identity_relation(Index n) {
  Matrix gens(2 * n, n);
  gens << Matrix::Identity(n, n), Matrix::Identity(n, n);
  return Relation(adopt_orthonormal(gens / std::sqrt(2.0)));
}

Frame domain_of(const Relation& t, const TolerancePolicy& tol) {
  return orthonormalize(t.x_block(), tol, 1.0);
}

Frame range_of(const Relation& t, const TolerancePolicy& tol) {
  return orthonormalize(t.f_block(), tol, 1.0);
}

Frame null_of(const Relation& t, const TolerancePolicy& tol) {
  const Frame coeffs = kernel(t.f_block(), tol, 1.0);
  return orthonormalize(t.x_block() * coeffs.basis(), tol, 1.0);
}

Frame mv_part(const Relation& t, const TolerancePolicy& tol) {
  const Frame coeffs = kernel(t.x_block(), tol, 1.0);
  return orthonormalize(t.f_block() * coeffs.basis(), tol, 1.0);
}

Parts parts(const Relation& t, const TolerancePolicy& tol) {
  return Parts{domain_of(t, tol), range_of(t, tol), null_of(t, tol), mv_part(t, tol)};
}

std::optional<Vector> some_image(const Relation& t, const Vector& x, const TolerancePolicy& tol) {
  if (x.size() != t.n()) throw DimensionError("vector length does not match relation");
  if (t.dim() == 0) {
    if (x.norm() <= tol.containment_tol) return Vector::Zero(t.n());
    return std::nullopt;
  }
  const Matrix gx = t.x_block();
  Eigen::JacobiSVD<Matrix> svd(gx, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  const double cut = rank_cutoff(sigma.size() ? sigma(0) : 0.0, gx.rows(), gx.cols(), tol, 1.0);
  Vector c = Vector::Zero(gx.cols());
  const Vector ux = svd.matrixU().adjoint() * x;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) c += svd.matrixV().col(i) * (ux(i) / sigma(i));
  }
  if ((gx * c - x).norm() > tol.containment_tol * std::max(1.0, x.norm())) return std::nullopt;
  return Vector(t.f_block() * c);
}

Relation inverse(const Relation& t) {
  const Index n = t.n();
  Matrix swapped(2 * n, t.dim());
  swapped << t.f_block(), t.x_block();
  return Relation(adopt_orthonormal(std::move(swapped)));
}

Relation scalar_mul(Complex alpha, const Relation& t, const TolerancePolicy& tol) {
  Matrix gens(2 * t.n(), t.dim());
  gens << t.x_block(), alpha * t.f_block();
  return Relation(orthonormalize(gens, tol, 1.0));
}

namespace {

// Places the graph of `r` in two of the three n-blocks of C^{3n} and leaves
// the remaining block free: {(u_0, u_1, u_2) : (u_first, u_second) in r}.
Frame lift(const Relation& r, int first, int second) {
  const Index n = r.n();
  const int free_block = 3 - first - second;
  Matrix b = Matrix::Zero(3 * n, r.dim() + n);
  b.block(first * n, 0, n, r.dim()) = r.x_block();
  b.block(second * n, 0, n, r.dim()) = r.f_block();
  b.block(free_block * n, r.dim(), n, n) = Matrix::Identity(n, n);
  return adopt_orthonormal(std::move(b));
}

}  // namespace

Frame paired_graph(const Relation& t, const Relation& s, const TolerancePolicy& tol) {
  require_same_n(t, s, "paired_graph");
  return intersect(lift(t, 0, 1), lift(s, 0, 2), tol);
}

Relation op_sum(const Relation& t, const Relation& s, const TolerancePolicy& tol) {
  require_same_n(t, s, "op_sum");
  const Index n = t.n();
  const Frame lifted = paired_graph(t, s, tol);
  const Matrix& l = lifted.basis();
  Matrix gens(2 * n, l.cols());
  gens << l.topRows(n), l.middleRows(n, n) + l.bottomRows(n);
  return Relation(orthonormalize(gens, tol, 1.0));
}

Relation compose(const Relation& s, const Relation& t, const TolerancePolicy& tol) {
  require_same_n(s, t, "compose");
  const Index n = t.n();
  // {(x, f, g) : (x, f) in T, (f, g) in S}
  const Frame lifted = intersect(lift(t, 0, 1), lift(s, 1, 2), tol);
  const Matrix& l = lifted.basis();
  Matrix gens(2 * n, l.cols());
  gens << l.topRows(n), l.bottomRows(n);
  return Relation(orthonormalize(gens, tol, 1.0));
}

Relation shift(const Relation& t, Complex lambda, const TolerancePolicy& tol) {
  Matrix gens(2 * t.n(), t.dim());
  gens << t.x_block(), t.f_block() - lambda * t.x_block();
  return Relation(orthonormalize(gens, tol, 1.0));
}

Relation adjoint(const Relation& t) {
  // T* is the orthogonal complement of {(-f, x) : (x, f) in T}: for (y, g),
  // <(y, g), (-f, x)> = <g, x> - <y, f>.
  Matrix rotated(2 * t.n(), t.dim());
  rotated << -t.f_block(), t.x_block();
  return Relation(complement(adopt_orthonormal(std::move(rotated))));
}

bool same_relation(const Relation& a, const Relation& b, const TolerancePolicy& tol) {
  require_same_n(a, b, "same_relation");
  return same_subspace(a.graph(), b.graph(), tol);
}

Classification classify(const Relation& t, const TolerancePolicy& tol) {
  Classification c;
  c.is_operator = mv_part(t, tol).empty();
  c.is_densely_defined = domain_of(t, tol).rank() == t.n();
  const Relation star = adjoint(t);
  c.is_hermitian = is_subset(t.graph(), star.graph(), tol);
  c.is_selfadjoint = c.is_hermitian && is_subset(star.graph(), t.graph(), tol);
  return c;
}

bool is_hermitian(const Relation& t, const TolerancePolicy& tol) {
  return is_subset(t.graph(), adjoint(t).graph(), tol);
}

bool is_selfadjoint(const Relation& t, const TolerancePolicy& tol) {
  return same_relation(t, adjoint(t), tol);
}

}  // namespace relcalc
