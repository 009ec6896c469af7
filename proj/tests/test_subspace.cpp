#include <cmath>
#include <numbers>

#include "relcalc/subspace.hpp"
#include "test_util.hpp"

using namespace relcalc;
using namespace relcalc::testing;

TEST_CASE("orthonormalize keeps the span and picks the numerical rank") {
  SUBCASE("collinear inputs") {
    const std::vector<Vector> vs{vec({1, 0}), vec({2, 0})};
    const Frame f = orthonormalize(vs, 2, kTol);
    CHECK(f.rank() == 1);
    CHECK(same_proj(f, span_of({e(0, 2)})));
  }
  SUBCASE("empty list") {
    const Frame f = orthonormalize(std::vector<Vector>{}, 3, kTol);
    CHECK(f.rank() == 0);
    CHECK(f.ambient_dim() == 3);
  }
  SUBCASE("independent inputs give an orthonormal basis") {
    const std::vector<Vector> vs{vec({1, 1}), vec({1, -1})};
    const Frame f = orthonormalize(vs, 2, kTol);
    REQUIRE(f.rank() == 2);
    const Matrix gram = f.basis().adjoint() * f.basis();
    CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("inconsistent lengths") {
    const std::vector<Vector> vs{vec({1, 0}), vec({1, 0, 0})};
    CHECK_THROWS_AS(orthonormalize(vs, 2, kTol), DimensionError);
  }
}

TEST_CASE("Frame rejects non-orthonormal bases") {
  Matrix m(2, 1);
  m << 2.0, 0.0;
  CHECK_THROWS_AS(Frame(m, 1e-9), DimensionError);
  m << 1.0, 0.0;
  CHECK_NOTHROW(Frame(m, 1e-9));
}

TEST_CASE("complement") {
  CHECK(same_proj(complement(span_of({e(0, 2)})), span_of({e(1, 2)})));
  CHECK(complement(Frame(3)).rank() == 3);
  Rng rng(11);
  const Frame f = random_frame(4, 2, rng);
  const Frame g = complement(f);
  CHECK(g.rank() == 2);
  CHECK((f.projector() + g.projector() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((f.basis().adjoint() * g.basis()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("intersect and span_sum") {
  const Frame a = span_of({e(0, 3), e(1, 3)});
  const Frame b = span_of({e(1, 3), e(2, 3)});
  CHECK(same_proj(intersect(a, b, kTol), span_of({e(1, 3)})));
  CHECK(same_subspace(intersect(a, a, kTol), a, kTol));
  CHECK(same_proj(span_sum(span_of({e(0, 2)}), span_of({e(1, 2)}), kTol), Frame::full(2)));
  CHECK(same_subspace(span_sum(a, Frame(3), kTol), a, kTol));
  CHECK_THROWS_AS(intersect(a, Frame(2), kTol), DimensionError);
  CHECK_THROWS_AS(span_sum(a, Frame(4), kTol), DimensionError);
}

TEST_CASE("intersect/span_sum dimension formula on random frames") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 5;
    const Index r1 = static_cast<Index>(rng.next_u64() % 6);
    const Index r2 = static_cast<Index>(rng.next_u64() % 6);
    // Force a shared direction sometimes so intersections are not always generic.
    Matrix g1 = gaussian_matrix(d, r1, rng);
    Matrix g2 = gaussian_matrix(d, r2, rng);
    if (r1 > 0 && r2 > 0 && trial % 2 == 0) g2.col(0) = g1.col(0);
    const Frame f1 = orthonormalize(g1, kTol);
    const Frame f2 = orthonormalize(g2, kTol);
    const Frame cap = intersect(f1, f2, kTol);
    const Frame cup = span_sum(f1, f2, kTol);
    Matrix both(d, r1 + r2);
    both << g1, g2;
    const Index oracle_rank = r1 + r2 == 0 ? 0 : Eigen::FullPivLU<Matrix>(both).rank();
    CHECK(cup.rank() == oracle_rank);
    CHECK(cap.rank() == f1.rank() + f2.rank() - cup.rank());
    CHECK(is_subset(cap, f1, kTol));
    CHECK(is_subset(cap, f2, kTol));
  }
}

TEST_CASE("distance") {
  CHECK(distance(e(0, 2), span_of({e(0, 2)})) == doctest::Approx(0.0));
  CHECK(distance(e(0, 2), span_of({e(1, 2)})) == doctest::Approx(1.0));
  // min_w ||(1,1) - w|| over w = t e1 is attained at t = 1.
  CHECK(distance(vec({1, 1}), span_of({e(0, 2)})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(distance(vec({1, 1, 1}), span_of({e(0, 2)})), DimensionError);
}

TEST_CASE("Pythagoras for distance and projection") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.next_u64() % 8);
    const Frame f = random_frame(d, static_cast<Index>(rng.next_u64() % (d + 1)), rng);
    const Vector v = gaussian_matrix(d, 1, rng).col(0);
    const double dist = distance(v, f);
    CHECK(std::abs(dist * dist + f.project(v).squaredNorm() - v.squaredNorm()) <
          1e-12 * (1 + v.squaredNorm()));
  }
}

TEST_CASE("compare reports subset, equality and gap") {
  SUBCASE("line inside plane") {
    const Comparison c = compare(span_of({e(0, 2)}), span_of({e(0, 2), e(1, 2)}), kTol);
    CHECK(c.is_subset);
    CHECK_FALSE(c.is_equal);
    CHECK(c.gap == doctest::Approx(1.0));
  }
  SUBCASE("identical") {
    Rng rng(3);
    const Frame f = random_frame(4, 2, rng);
    const Comparison c = compare(f, f, kTol);
    CHECK(c.is_equal);
    CHECK(c.gap < 1e-12);
  }
  SUBCASE("lines at angle pi/6") {
    const double th = std::numbers::pi / 6;
    const Comparison c =
        compare(span_of({e(0, 2)}), span_of({vec({std::cos(th), std::sin(th)})}), kTol);
    CHECK_FALSE(c.is_subset);
    CHECK(c.gap == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("projector of complement is I - P") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.next_u64() % 10);
    const Frame f = random_frame(d, static_cast<Index>(rng.next_u64() % (d + 1)), rng);
    const Matrix sum = f.projector() + complement(f).projector();
    CHECK((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gap below one transfers rank; rank mismatch forces gap one") {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + static_cast<Index>(rng.next_u64() % 6);
    const Index r = static_cast<Index>(rng.next_u64() % (d + 1));
    const Frame f = random_frame(d, r, rng);
    // Small perturbation of f: equal rank, gap < 1.
    const Matrix noise = 0.05 * gaussian_matrix(d, r, rng);
    const Frame g = orthonormalize(f.basis() + noise, kTol);
    const double gg = gap(f, g);
    if (gg < 1.0) CHECK(f.rank() == g.rank());
    // Different rank.
    const Index r2 = (r + 1) % (d + 1);
    const Frame h = random_frame(d, r2, rng);
    CHECK(gap(f, h) >= 1.0 - 1e-10);
  }
}
