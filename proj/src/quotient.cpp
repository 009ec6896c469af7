#include "relcalc/quotient.hpp"

namespace relcalc {

Vector quotient_rep(const Vector& v, const Frame& e) { return v - e.project(v); }

Complex quotient_inner(const Vector& x, const Vector& y, const Frame& e) {
  return quotient_rep(y, e).dot(quotient_rep(x, e));
}

OperatorPart operator_part(const Relation& t, const TolerancePolicy& tol) {
  Frame dom = domain_of(t, tol);
  Frame mv = mv_part(t, tol);
  const Index n = t.n();
  Matrix m(n, dom.rank());
  if (dom.rank() > 0) {
    // Least-squares coefficients c_j with Gx c_j = d_j; Gf c_j is then some
    // element of T(d_j), and its T(0)^perp component is independent of the choice.
    const Matrix gx = t.x_block();
    Eigen::JacobiSVD<Matrix> svd(gx, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sigma = svd.singularValues();
    const double cut = rank_cutoff(sigma(0), gx.rows(), gx.cols(), tol, 1.0);
    Matrix pinv = Matrix::Zero(gx.cols(), gx.rows());
    for (Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) > cut) {
        pinv += svd.matrixV().col(i) * (svd.matrixU().col(i).adjoint() / sigma(i));
      }
    }
    const Matrix images = t.f_block() * (pinv * dom.basis());
    for (Index j = 0; j < images.cols(); ++j) m.col(j) = quotient_rep(images.col(j), mv);
  }
  return OperatorPart(std::move(dom), std::move(mv), std::move(m));
}

double norm_at(const OperatorPart& part, const Vector& x, const TolerancePolicy& tol) {
  if (x.size() != part.domain().ambient_dim()) {
    throw DimensionError("vector length does not match relation");
  }
  if (distance(x, part.domain()) > tol.containment_tol * std::max(1.0, x.norm())) {
    throw DomainError("vector is not in the domain of the relation");
  }
  return part.apply(x).norm();
}

double norm_at(const Relation& t, const Vector& x, const TolerancePolicy& tol) {
  return norm_at(operator_part(t, tol), x, tol);
}

double relation_norm(const Relation& t, const TolerancePolicy& tol) {
  return spectral_norm(operator_part(t, tol).matrix());
}

}  // namespace relcalc
