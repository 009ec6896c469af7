#include "relcalc/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace relcalc {

void TolerancePolicy::validate() const {
  for (double v : {rank_rtol, cmp_atol, containment_tol}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("tolerance values must be finite and nonnegative");
    }
  }
}

Frame::Frame(Index ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {
  if (ambient_dim < 0) throw DimensionError("negative ambient dimension");
}

Frame::Frame(Matrix basis, double atol) : ambient_dim_(basis.rows()), basis_(std::move(basis)) {
  if (basis_.cols() > basis_.rows()) {
    throw DimensionError("frame has more columns than its ambient dimension");
  }
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.adjoint() * basis_;
    const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (!(err <= atol)) {
      throw DimensionError("frame basis is not orthonormal (max deviation " + std::to_string(err) +
                           ")");
    }
  }
}

Frame::Frame(Matrix basis, Unchecked) : ambient_dim_(basis.rows()), basis_(std::move(basis)) {}

Frame adopt_orthonormal(Matrix basis) { return Frame(std::move(basis), Frame::Unchecked{}); }

Frame Frame::full(Index ambient_dim) {
  return adopt_orthonormal(Matrix::Identity(ambient_dim, ambient_dim));
}

Matrix Frame::projector() const { return basis_ * basis_.adjoint(); }

Vector Frame::project(const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionError("vector length does not match frame");
  if (basis_.cols() == 0) return Vector::Zero(ambient_dim_);
  return basis_ * (basis_.adjoint() * v);
}

double rank_cutoff(double sigma_max, Index rows, Index cols, const TolerancePolicy& tol,
                   double reference_scale) {
  const double scale = std::max(sigma_max, reference_scale);
  return scale * tol.rank_rtol * static_cast<double>(std::max<Index>({rows, cols, 1}));
}

namespace {

Index count_above(const RealVector& sigma, double cutoff, double sigma_max) {
  if (sigma_max == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace

Frame orthonormalize(const Matrix& generators, const TolerancePolicy& tol,
                     double reference_scale) {
  const Index d = generators.rows();
  if (generators.cols() == 0 || d == 0) return Frame(d);
  Eigen::JacobiSVD<Matrix> svd(generators, Eigen::ComputeThinU);
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const Index r = count_above(sigma, rank_cutoff(smax, d, generators.cols(), tol, reference_scale),
                              smax);
  return adopt_orthonormal(svd.matrixU().leftCols(r));
}

Frame orthonormalize(std::span<const Vector> vectors, Index ambient_dim,
                     const TolerancePolicy& tol) {
  Matrix gens(ambient_dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != ambient_dim) {
      throw DimensionError("vector " + std::to_string(j) + " has length " +
                           std::to_string(vectors[j].size()) + ", expected " +
                           std::to_string(ambient_dim));
    }
    gens.col(static_cast<Index>(j)) = vectors[j];
  }
  return orthonormalize(gens, tol);
}

Frame kernel(const Matrix& a, const TolerancePolicy& tol, double reference_scale) {
  const Index k = a.cols();
  if (k == 0) return Frame(0);
  if (a.rows() == 0) return Frame::full(k);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const Index r = count_above(sigma, rank_cutoff(smax, a.rows(), k, tol, reference_scale), smax);
  return adopt_orthonormal(svd.matrixV().rightCols(k - r));
}

Frame complement(const Frame& f) {
  const Index d = f.ambient_dim();
  const Index r = f.rank();
  if (r == 0) return Frame::full(d);
  if (r == d) return Frame(d);
  Eigen::HouseholderQR<Matrix> qr(f.basis());
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return adopt_orthonormal(q.rightCols(d - r));
}

void require_same_ambient(const Frame& f1, const Frame& f2, const char* what) {
  if (f1.ambient_dim() != f2.ambient_dim()) {
    throw DimensionError(std::string(what) + ": ambient dimensions differ (" +
                         std::to_string(f1.ambient_dim()) + " vs " +
                         std::to_string(f2.ambient_dim()) + ")");
  }
}

Frame intersect(const Frame& f1, const Frame& f2, const TolerancePolicy& tol) {
  require_same_ambient(f1, f2, "intersect");
  const Index d = f1.ambient_dim();
  if (f1.empty() || f2.empty()) return Frame(d);
  const Index r1 = f1.rank();
  const Index r2 = f2.rank();
  Matrix stacked(d, r1 + r2);
  stacked << f1.basis(), -f2.basis();
  // Null vectors (a; b) of [F1, -F2] are exactly the pairs with F1 a = F2 b.
  const Frame null = kernel(stacked, tol, 1.0);
  if (null.empty()) return Frame(d);
  const Matrix common =
      0.5 * (f1.basis() * null.basis().topRows(r1) + f2.basis() * null.basis().bottomRows(r2));
  return orthonormalize(common, tol);
}

Frame span_sum(const Frame& f1, const Frame& f2, const TolerancePolicy& tol) {
  require_same_ambient(f1, f2, "span_sum");
  Matrix gens(f1.ambient_dim(), f1.rank() + f2.rank());
  gens << f1.basis(), f2.basis();
  return orthonormalize(gens, tol, 1.0);
}

double distance(const Vector& v, const Frame& f) { return (v - f.project(v)).norm(); }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double max_eigenvalue(const Matrix& hermitian) {
  if (hermitian.size() == 0) return -std::numeric_limits<double>::infinity();
  const Matrix sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double containment_sine(const Frame& f1, const Frame& f2) {
  require_same_ambient(f1, f2, "containment_sine");
  if (f1.empty()) return 0.0;
  if (f2.empty()) return 1.0;
  const Matrix residual = f1.basis() - f2.basis() * (f2.basis().adjoint() * f1.basis());
  return std::min(1.0, spectral_norm(residual));
}

double gap(const Frame& f1, const Frame& f2) {
  require_same_ambient(f1, f2, "gap");
  if (f1.ambient_dim() == 0) return 0.0;
  const Matrix diff = f1.projector() - f2.projector();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Comparison compare(const Frame& f1, const Frame& f2, const TolerancePolicy& tol) {
  require_same_ambient(f1, f2, "compare");
  Comparison c;
  c.is_subset = containment_sine(f1, f2) <= tol.containment_tol;
  c.is_equal = c.is_subset && containment_sine(f2, f1) <= tol.containment_tol;
  c.gap = gap(f1, f2);
  return c;
}

bool is_subset(const Frame& f1, const Frame& f2, const TolerancePolicy& tol) {
  return containment_sine(f1, f2) <= tol.containment_tol;
}

bool same_subspace(const Frame& f1, const Frame& f2, const TolerancePolicy& tol) {
  return is_subset(f1, f2, tol) && is_subset(f2, f1, tol);
}

}  // namespace relcalc
