#include "relcalc/deficiency.hpp"

#include <cmath>

#include "relcalc/quotient.hpp"
#include "relcalc/random.hpp"

namespace relcalc {

Frame deficiency_space(const Relation& t, Complex lambda, const TolerancePolicy& tol) {
  return complement(range_of(shift(t, lambda, tol), tol));
}

Index deficiency_index(const Relation& t, Complex lambda, const TolerancePolicy& tol) {
  return deficiency_space(t, lambda, tol).rank();
}

std::vector<Complex> half_plane_samples(int per_half_plane, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> out;
  out.reserve(2 * static_cast<std::size_t>(std::max(per_half_plane, 0)));
  for (double sign : {1.0, -1.0}) {
    for (int k = 0; k < per_half_plane; ++k) {
      const double re = rng.uniform(-10.0, 10.0);
      const double im = rng.uniform(0.1, 10.0);
      out.emplace_back(re, sign * im);
    }
  }
  return out;
}

std::vector<DeficiencySample> deficiency_profile(const Relation& t,
                                                 const std::vector<Complex>& lambdas,
                                                 const TolerancePolicy& tol) {
  std::vector<DeficiencySample> out;
  out.reserve(lambdas.size());
  for (const Complex& l : lambdas) out.push_back({l, deficiency_index(t, l, tol)});
  return out;
}

DeficiencyReport deficiency_indices(const Relation& t, int sample_count, std::uint64_t seed,
                                    const TolerancePolicy& tol) {
  if (sample_count < 1) throw HypothesisError("sample_count must be at least 1");
  if (!is_hermitian(t, tol)) {
    throw HypothesisError("deficiency indices are only constant on half-planes for Hermitian relations");
  }
  std::vector<Complex> lambdas{Complex(0, 1), Complex(0, -1)};
  const auto extra = half_plane_samples(sample_count, seed);
  lambdas.insert(lambdas.end(), extra.begin(), extra.end());

  DeficiencyReport rep;
  rep.samples = deficiency_profile(t, lambdas, tol);
  rep.d_plus = rep.samples[0].index;
  rep.d_minus = rep.samples[1].index;
  rep.constancy_ok = true;
  for (const auto& s : rep.samples) {
    const Index expected = s.lambda.imag() > 0 ? rep.d_plus : rep.d_minus;
    if (s.index != expected) rep.constancy_ok = false;
  }
  return rep;
}

double shifted_norm_residual(const Relation& t, const Vector& x, Complex z,
                             const TolerancePolicy& tol) {
  const double a = z.real();
  const double b = z.imag();
  const double lhs = norm_at(shift(t, z, tol), x, tol);
  const double re = norm_at(shift(t, Complex(a, 0.0), tol), x, tol);
  return std::abs(lhs * lhs - re * re - b * b * x.squaredNorm());
}

double resolvent_norm(const Relation& t, Complex z, const TolerancePolicy& tol) {
  return relation_norm(inverse(shift(t, z, tol)), tol);
}

}  // namespace relcalc
