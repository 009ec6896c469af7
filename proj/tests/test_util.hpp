#pragma once

#include <initializer_list>

#include <doctest.h>

#include "relcalc/random.hpp"
#include "relcalc/relation.hpp"

namespace relcalc::testing {

inline const TolerancePolicy kTol{};

inline Vector e(Index i, Index n) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

inline Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

/// Frame spanned by the given columns.
inline Frame span_of(std::initializer_list<Vector> cols) {
  const Index d = cols.begin()->size();
  Matrix m(d, static_cast<Index>(cols.size()));
  Index j = 0;
  for (const auto& c : cols) m.col(j++) = c;
  return orthonormalize(m, kTol);
}

/// Relation spanned by pairs (x, f).
inline Relation rel(std::initializer_list<std::pair<Vector, Vector>> pairs, Index n) {
  Matrix m(2 * n, static_cast<Index>(pairs.size()));
  Index j = 0;
  for (const auto& [x, f] : pairs) {
    m.col(j).head(n) = x;
    m.col(j).tail(n) = f;
    ++j;
  }
  return from_generators(m, kTol);
}

inline Relation graph(const Matrix& m) { return from_operator(m, std::nullopt, kTol); }

inline Matrix diag(std::initializer_list<Complex> xs) { return vec(xs).asDiagonal(); }

inline Frame random_frame(Index d, Index r, Rng& rng) {
  return orthonormalize(gaussian_matrix(d, r, rng), kTol);
}

inline Matrix random_hermitian(Index n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Graph spanned by a random number (0..2n) of Gaussian pairs.
inline Relation random_relation(Index n, Rng& rng) {
  const Index k = static_cast<Index>(rng.next_u64() % (2 * n + 1));
  return from_generators(gaussian_matrix(2 * n, k, rng), kTol);
}

/// Hermitian restriction of a random Hermitian matrix to a random domain.
inline Relation random_hermitian_relation(Index n, Rng& rng) {
  const Index m = static_cast<Index>(rng.next_u64() % (n + 1));
  return from_operator(random_hermitian(n, rng), random_frame(n, m, rng), kTol);
}

inline bool same_proj(const Frame& a, const Frame& b, double atol = 1e-10) {
  return (a.projector() - b.projector()).cwiseAbs().maxCoeff() <= atol;
}

}  // namespace relcalc::testing
