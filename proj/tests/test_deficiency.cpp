#include "relcalc/corpus.hpp"
#include "relcalc/deficiency.hpp"
#include "relcalc/quotient.hpp"
#include "test_util.hpp"

using namespace relcalc;
using namespace relcalc::testing;

namespace {

// Rank oracle: d_lambda = n - rank of the f-block of shift(T, lambda), built
// directly from generators instead of through deficiency_space.
Index oracle_index(const Relation& t, Complex lambda) {
  const Matrix f = t.f_block() - lambda * t.x_block();
  if (f.cols() == 0) return t.n();
  Eigen::JacobiSVD<Matrix> svd(f);
  const RealVector& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) r += s(i) > 1e-8 ? 1 : 0;
  return t.n() - r;
}

}  // namespace

TEST_CASE("deficiency spaces") {
  Rng rng(1);
  CHECK(deficiency_space(graph(random_hermitian(3, rng)), Complex(0, 1), kTol).rank() == 0);
  const Relation trivial(1);
  CHECK(deficiency_index(trivial, Complex(0.3, 2), kTol) == 1);
  CHECK(deficiency_space(trivial, Complex(0, -1), kTol).rank() == 1);
  const Relation line = rel({{e(0, 2), Vector::Zero(2)}}, 2);
  const Frame d = deficiency_space(line, Complex(0, 1), kTol);
  CHECK(same_proj(d, span_of({e(1, 2)})));
  CHECK(oracle_index(line, Complex(0, 1)) == 1);
}

TEST_CASE("deficiency indices") {
  Rng rng(2);
  const DeficiencyReport sa = deficiency_indices(graph(random_hermitian(4, rng)), 5, 3, kTol);
  CHECK(sa.d_plus == 0);
  CHECK(sa.d_minus == 0);
  CHECK(sa.constancy_ok);

  const Relation mv = rel({{vec({0}), vec({1})}}, 1);
  const DeficiencyReport r = deficiency_indices(mv, 10, 4, kTol);
  CHECK(r.d_plus == 0);
  CHECK(r.d_minus == 0);
  CHECK(r.constancy_ok);
  for (const auto& smp : r.samples) CHECK(smp.index == oracle_index(mv, smp.lambda));

  for (Index n : {2, 3, 5}) {
    for (Index m = 0; m <= n; ++m) {
      const Relation sa_rel = cayley_selfadjoint(n, 10 * n + m, kTol);
      const Relation h = hermitian_restriction(sa_rel, m, 7, kTol);
      const DeficiencyReport hr = deficiency_indices(h, 5, 8, kTol);
      CHECK(hr.d_plus == n - m);
      CHECK(hr.d_minus == n - m);
      CHECK(hr.constancy_ok);
      for (const auto& smp : hr.samples) CHECK(smp.index == oracle_index(h, smp.lambda));
    }
  }
}

TEST_CASE("deficiency_indices refuses what it cannot promise") {
  CHECK_THROWS_AS(deficiency_indices(graph(diag({Complex(0, 1)})), 3, 1, kTol), HypothesisError);
  CHECK_THROWS_AS(deficiency_indices(graph(diag({1})), 0, 1, kTol), HypothesisError);
  // The raw profile is still available for non-Hermitian input.
  const auto prof = deficiency_profile(graph(diag({Complex(0, 1)})), {Complex(0, 1)}, kTol);
  REQUIRE(prof.size() == 1);
  CHECK(prof[0].index == 1);
}

TEST_CASE("sample points avoid the real axis") {
  const auto pts = half_plane_samples(20, 99);
  REQUIRE(pts.size() == 40);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(pts[i].real()) <= 10.0);
    CHECK(std::abs(pts[i].imag()) >= 0.1);
    CHECK(std::abs(pts[i].imag()) <= 10.0);
    CHECK((pts[i].imag() > 0) == (i < 20));
  }
  CHECK(pts == half_plane_samples(20, 99));
}

TEST_CASE("finite-dimension identity over random Hermitian relations") {
  Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 6);
    const Relation t = random_hermitian_relation(n, rng);
    const DeficiencyReport r = deficiency_indices(t, 3, static_cast<std::uint64_t>(trial), kTol);
    CHECK(r.d_plus == n - t.dim());
    CHECK(r.d_minus == n - t.dim());
    CHECK(r.constancy_ok);
  }
}

TEST_CASE("Pythagoras identity and resolvent bound") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 5);
    const Relation t = cayley_selfadjoint(n, static_cast<std::uint64_t>(trial), kTol,
                                          static_cast<Index>(rng.next_u64() % (n + 1)) / 2);
    const Relation h = hermitian_restriction(t, static_cast<Index>(rng.next_u64() % (n + 1)),
                                             static_cast<std::uint64_t>(trial) + 1000, kTol);
    const Complex z(rng.uniform(-5, 5), (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.1, 5));
    const Frame dom = domain_of(h, kTol);
    for (int k = 0; k < 5 && !dom.empty(); ++k) {
      const Vector x = rng.uniform(0.1, 3.0) * random_unit_in(dom, rng);
      CHECK(shifted_norm_residual(h, x, z, kTol) <= 1e-9 * (1.0 + x.squaredNorm()));
    }
    CHECK(resolvent_norm(h, z, kTol) <= 1.0 / std::abs(z.imag()) + 1e-9);
    CHECK(null_of(shift(h, z, kTol), kTol).empty());
  }
}

TEST_CASE("Pythagoras identity fails for non-Hermitian input") {
  const Relation t = graph(diag({Complex(0, 1)}));
  CHECK(shifted_norm_residual(t, vec({1}), Complex(0, 1), kTol) > 0.5);
}
