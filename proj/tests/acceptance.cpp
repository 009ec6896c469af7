// Acceptance run: one PASS/FAIL line per criterion. Every criterion is decided
// against oracles written here directly on top of Eigen (least squares, SVD
// ranks, Gram matrices), not against the library's own subspace arithmetic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relcalc/cli.hpp"
#include "relcalc/corpus.hpp"
#include "relcalc/deficiency.hpp"
#include "relcalc/io.hpp"
#include "relcalc/perturbation.hpp"
#include "relcalc/quotient.hpp"
#include "relcalc/random.hpp"
#include "relcalc/verify.hpp"

using namespace relcalc;

namespace {

const TolerancePolicy kTol{};
constexpr std::uint64_t kSeed = 20240611;
constexpr double kTwoPi = 6.283185307179586;

// ------------------------------------------------------------ oracles

Matrix orth(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s(0)) * static_cast<double>(std::max(m.rows(), m.cols()));
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Index rank_of(const Matrix& m) { return orth(m).cols(); }

// Columns spanning {c : m c = 0}.
Matrix null_basis(const Matrix& m) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cut = s.size() ? 1e-10 * std::max(1.0, s(0)) * static_cast<double>(std::max(m.rows(), m.cols())) : 0.0;
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Matrix lstsq(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.cols(), b.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(1e-10);
  cod.compute(a);
  return cod.solve(b);
}

Matrix projector(const Matrix& q) { return q * q.adjoint(); }

double lambda_max(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

// A relation seen as generator blocks: T = {(X c, F c)}.
struct Gens {
  Matrix x, f;
  Index n() const { return x.rows(); }
};

Gens gens_of(const Relation& t) { return {t.x_block(), t.f_block()}; }

Matrix mv_of(const Gens& g) { return orth(g.f * null_basis(g.x)); }
Matrix dom_of(const Gens& g) { return orth(g.x); }

// ||(T - zI)(x)|| as the distance of one image to the multivalued part.
double coset_norm(const Gens& g, const Vector& x, Complex z) {
  const Vector c = lstsq(g.x, x);
  const Vector v = g.f * c - z * x;
  const Matrix m = mv_of(g);
  return (v - m * (m.adjoint() * v)).norm();
}

// ||T(x)|| as min ||F c|| over {c : X c = x} by least squares.
double coset_min(const Gens& g, const Vector& x) {
  const Vector c0 = lstsq(g.x, x);
  const Matrix k = null_basis(g.x);
  const Vector f0 = g.f * c0;
  if (k.cols() == 0) return f0.norm();
  const Matrix a = g.f * k;
  const Vector w = lstsq(a, -f0);
  return (f0 + a * w).norm();
}

// dim R(T - lambda)^perp.
Index defect(const Gens& g, Complex lambda) { return g.n() - rank_of(g.f - lambda * g.x); }

// T + S when D(T) in D(S) and S(0) in T(0): {(X c, F c + S(X c))}.
Gens sum_gens(const Gens& t, const Gens& s) {
  const Matrix cs = lstsq(s.x, t.x);
  return {t.x, t.f + s.f * cs};
}

bool hermitian(const Gens& g) {
  const Matrix form = g.x.adjoint() * g.f - g.f.adjoint() * g.x;
  return form.size() == 0 || form.cwiseAbs().maxCoeff() <= 1e-9;
}

// Self-adjoint in C^n: Hermitian with a graph of dimension n.
bool selfadjoint(const Gens& g) {
  Matrix both(2 * g.n(), g.x.cols());
  both << g.x, g.f;
  return hermitian(g) && rank_of(both) == g.n();
}

// Grams of ||T(x)||^2 and ||S(x)||^2 on an orthonormal basis of D(T).
struct Grams {
  Matrix gt, gs;
};

Matrix single_valued(const Gens& g, const Matrix& d) {
  const Matrix m = mv_of(g);
  const Matrix img = g.f * lstsq(g.x, d);
  return img - m * (m.adjoint() * img);
}

Grams grams(const Gens& t, const Gens& s) {
  const Matrix d = dom_of(t);
  const Matrix ts = single_valued(t, d);
  const Matrix ss = single_valued(s, d);
  return {ts.adjoint() * ts, ss.adjoint() * ss};
}

bool quadratic_holds(const Grams& g, double a, double b) {
  if (g.gt.rows() == 0) return true;
  const Matrix id = Matrix::Identity(g.gt.rows(), g.gt.cols());
  const double scale = 1.0 + g.gs.cwiseAbs().maxCoeff() + b * b * g.gt.cwiseAbs().maxCoeff() + a * a;
  return lambda_max(g.gs - b * b * g.gt - a * a * id) <= 1e-9 * scale;
}

double minimal_a_oracle(const Grams& g, double b) {
  if (g.gt.rows() == 0) return 0.0;
  return std::sqrt(std::max(0.0, lambda_max(g.gs - b * b * g.gt)));
}

Vector random_in(const Matrix& basis, Rng& rng) {
  Vector c(basis.cols());
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.complex_normal();
  const Vector v = basis * c;
  return v / v.norm();
}

Complex random_nonreal(Rng& rng) {
  const double im = rng.uniform(0.1, 5.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  return {rng.uniform(-5.0, 5.0), im};
}

// ------------------------------------------------------------ bookkeeping

struct Outcome {
  bool ok = true;
  long instances = 0;
  std::string note;  ///< first failure, or a summary when passing

  void require(bool cond, const std::function<std::string()>& why) {
    ++instances;
    if (!cond && ok) {
      ok = false;
      note = why();
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<CorpusItem> hermitian_corpus() { return relation_suite(kSeed, default_sizes(), 5, kTol); }
std::vector<CorpusItem> pair_corpus() { return pair_suite(derive_seed(kSeed, 7), default_sizes(), 3, kTol); }

// ------------------------------------------------------------ criteria

Outcome pythagoras(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  Rng rng(derive_seed(kSeed, 1));
  long relations = 0;
  for (const auto& item : corpus) {
    const Gens g = gens_of(item.t);
    const Matrix d = dom_of(g);
    if (d.cols() == 0) continue;
    ++relations;
    for (int k = 0; k < 20; ++k) {
      const Vector x = random_in(d, rng) * rng.uniform(0.1, 10.0);
      const Complex z = random_nonreal(rng);
      const double bound = 1e-9 * (1.0 + x.squaredNorm());
      const double lhs = coset_norm(g, x, z);
      const double mid = coset_norm(g, x, z.real());
      const double oracle = std::abs(lhs * lhs - mid * mid - z.imag() * z.imag() * x.squaredNorm());
      const double lib_z = norm_at(shift(item.t, z, kTol), x, kTol);
      const double lib_a = norm_at(shift(item.t, z.real(), kTol), x, kTol);
      const double lib = std::abs(lib_z * lib_z - lib_a * lib_a - z.imag() * z.imag() * x.squaredNorm());
      o.require(oracle <= bound && lib <= bound, [&] {
        return item.name + fmt(": residual oracle %.3g library %.3g bound %.3g", oracle, lib, bound);
      });
    }
  }
  if (relations < 100) {
    o.ok = false;
    o.note = "only " + std::to_string(relations) + " relations with a nonzero domain";
  } else if (o.ok) {
    o.note = std::to_string(relations) + " relations x 20 (x, z)";
  }
  return o;
}

Outcome resolvent_bound(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  Rng rng(derive_seed(kSeed, 2));
  double worst = -1e300;
  for (const auto& item : corpus) {
    const Gens g = gens_of(item.t);
    for (int k = 0; k < 5; ++k) {
      const Complex z = random_nonreal(rng);
      const double lib = relation_norm(inverse(shift(item.t, z, kTol)), kTol);
      // (T - z)^-1 maps (F - zX) c to X c and is single-valued for Hermitian T.
      const Matrix b = g.f - z * g.x;
      const double oracle = b.cols() ? op_norm(g.x * lstsq(b, Matrix::Identity(g.n(), g.n()))) : 0.0;
      const double bound = 1.0 / std::abs(z.imag()) + 1e-9;
      worst = std::max(worst, lib - bound);
      o.require(lib <= bound && std::abs(lib - oracle) <= 1e-8 * (1.0 + oracle), [&] {
        return item.name + fmt(": norm %.12g oracle %.12g bound %.12g", lib, oracle, bound);
      });
    }
  }
  if (o.ok) o.note = fmt("max(norm - 1/|Im z|) = %.3g", worst);
  return o;
}

Outcome projector_gap(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  Rng rng(derive_seed(kSeed, 3));
  for (const auto& item : corpus) {
    const Gens g = gens_of(item.t);
    const Matrix d = dom_of(g);
    if (d.cols() == 0) continue;
    const Index n = g.n();
    const Matrix r = gaussian_matrix(n, n, rng);
    const double c = std::max(op_norm(r), 1e-3);
    // B x = R A_s x on D(A): ||B(x)|| <= c ||A(x)||, B(0) = 0.
    const Matrix as_std = single_valued(g, d) * d.adjoint();
    const Relation b = from_operator(r * as_std, Frame(d, 1e-10), kTol);
    std::vector<Complex> ks{Complex(1.0 / (2 * c), 0.0)};
    for (int j = 0; j < 7; ++j) ks.push_back(std::polar(rng.uniform(0.0, 1.0 / (2 * c)), rng.uniform(0.0, kTwoPi)));
    const ProjectorFamily pf = projector_family(item.t, b, c, ks, kTol);
    o.require(pf.preconditions_ok(), [&] { return item.name + ": triple fails a precondition"; });
    const Matrix p0 = projector(orth(g.f));
    const Matrix img_b = r * single_valued(g, g.x);
    for (const auto& p : pf.points) {
      const Matrix pk = projector(orth(g.f + p.k * img_b));
      const double oracle = op_norm(pk - p0);
      const double bound = 2 * c * std::abs(p.k) + 1e-8;
      o.require(oracle <= bound && p.gap <= bound && std::abs(oracle - p.gap) <= 1e-8, [&] {
        return item.name + fmt(": gap %.12g oracle %.12g bound %.12g", p.gap, oracle, bound);
      });
    }
  }
  // A = {(e1, e2)}, B = {(e1, e1)}: gap(k) = |k| / sqrt(1 + |k|^2).
  Matrix ga(4, 1), gb(4, 1);
  ga << 1, 0, 0, 1;
  gb << 1, 0, 1, 0;
  std::vector<Complex> ks;
  for (int j = 0; j <= 40; ++j) ks.push_back(std::polar(0.5 * j / 40.0, 0.37 * j));
  const ProjectorFamily pf = projector_family(from_generators(ga, kTol), from_generators(gb, kTol), 1.0, ks, kTol);
  o.require(pf.points.size() == ks.size(), [] { return std::string("analytic triple rejected"); });
  for (const auto& p : pf.points) {
    const double k = std::abs(p.k);
    const double expected = k / std::sqrt(1 + k * k);
    o.require(std::abs(p.gap - expected) <= 1e-10 && p.gap <= 2 * k + 1e-8,
              [&] { return fmt("analytic: |k| = %.6g gap %.15g expected %.15g", k, p.gap, expected); });
  }
  if (o.ok) o.note = "corpus triples plus " + std::to_string(ks.size()) + " analytic points";
  return o;
}

Outcome index_invariance(const std::vector<CorpusItem>& pairs) {
  Outcome o;
  long checked = 0;
  for (const auto& item : pairs) {
    const InvarianceVerdict v = invariance_report(item.t, *item.s, InvarianceMode::homotopy_bounded, kTol);
    if (!v.hypotheses_ok) continue;
    ++checked;
    const Gens t = gens_of(item.t);
    const Gens ts = sum_gens(t, gens_of(*item.s));
    const Complex i(0, 1);
    const Index bp = defect(t, i), bm = defect(t, -i), pp = defect(ts, i), pm = defect(ts, -i);
    const HomotopyTrace tr = homotopy_sweep(item.t, *item.s, 5, kTol);
    o.require(bp == pp && bm == pm && v.conclusion_holds && tr.rank_constant(), [&] {
      std::ostringstream s;
      s << item.name << ": d(T) = (" << bp << "," << bm << ") d(T+S) = (" << pp << "," << pm
        << ") rank_constant " << tr.rank_constant();
      return s.str();
    });
  }
  if (checked == 0) {
    o.ok = false;
    o.note = "no pair satisfied the hypotheses";
  } else if (o.ok) {
    o.note = std::to_string(checked) + " pairs with hypotheses verified";
  }
  return o;
}

Outcome unit_bound_inequality(const std::vector<CorpusItem>& pairs, const std::vector<CorpusItem>& corpus) {
  Outcome o;
  long checked = 0;
  const Complex i(0, 1);
  for (const auto& item : pairs) {
    const InvarianceVerdict v = invariance_report(item.t, *item.s, InvarianceMode::unit_bound, kTol);
    if (!v.hypotheses_ok) continue;
    ++checked;
    const Gens t = gens_of(item.t);
    const Gens ts = sum_gens(t, gens_of(*item.s));
    o.require(defect(ts, i) <= defect(t, i) && defect(ts, -i) <= defect(t, -i) && v.conclusion_holds,
              [&] { return item.name + ": index increased"; });
  }
  long negations = 0;
  for (const auto& item : corpus) {
    // S = -T must be an operator, so T has to be one as well.
    if (!item.selfadjoint || mv_of(gens_of(item.t)).cols() > 0) continue;
    const Relation s = scalar_mul(-1.0, item.t, kTol);
    InvarianceOptions opts;
    opts.certificate = RelBoundCertificate{0.0, 1.0, BoundVariant::linear, "S = -T"};
    const InvarianceVerdict v = invariance_report(item.t, s, InvarianceMode::unit_bound, kTol, opts);
    ++negations;
    const Gens ts = sum_gens(gens_of(item.t), gens_of(s));
    o.require(v.hypotheses_ok && v.conclusion_holds && defect(ts, i) == 0 && defect(ts, -i) == 0 &&
                  v.perturbed == IndexPair{0, 0},
              [&] { return item.name + ": S = -T does not give d(T+S) = d(T) = 0"; });
  }
  if (checked == 0 || negations == 0) {
    o.ok = false;
    o.note = "no instance carried a b = 1 certificate";
  } else if (o.ok) {
    o.note = std::to_string(checked) + " corpus pairs, " + std::to_string(negations) + " S = -T";
  }
  return o;
}

Outcome selfadjoint_equivalence(const std::vector<CorpusItem>& pairs) {
  Outcome o;
  long sa = 0, not_sa = 0;
  for (const auto& item : pairs) {
    const InvarianceVerdict v = invariance_report(item.t, *item.s, InvarianceMode::selfadjointness, kTol);
    if (!v.hypotheses_ok) continue;
    const Gens t = gens_of(item.t);
    const bool t_sa = selfadjoint(t);
    const bool ts_sa = selfadjoint(sum_gens(t, gens_of(*item.s)));
    (t_sa ? sa : not_sa) += 1;
    o.require(t_sa == ts_sa && v.conclusion_holds && is_selfadjoint(op_sum(item.t, *item.s, kTol), kTol) == t_sa,
              [&] { return item.name + (t_sa ? ": T self-adjoint but T+S not" : ": T+S self-adjoint but T not"); });
  }
  if (sa == 0 || not_sa == 0) {
    o.ok = false;
    o.note = "only one direction exercised (" + std::to_string(sa) + " self-adjoint, " + std::to_string(not_sa) + " not)";
  } else if (o.ok) {
    o.note = std::to_string(sa) + " self-adjoint T, " + std::to_string(not_sa) + " not";
  }
  return o;
}

Outcome law_suites() {
  Outcome o;
  SuiteOptions opts;
  opts.seed = kSeed;
  std::string summary;
  for (const char* name : {"lemma21", "lemma22", "lemma24", "lemma25", "lemma26"}) {
    int total = 0;
    for (const auto& c : run_suite(name, opts, kTol)) {
      total += c.instances;
      o.require(c.status == CheckStatus::pass, [&] { return c.name + ": " + c.witness.dump(); });
    }
    o.require(total >= 50, [&] { return std::string(name) + ": only " + std::to_string(total) + " instances"; });
    summary += std::string(summary.empty() ? "" : ", ") + name + " " + std::to_string(total);
  }
  if (o.ok) o.note = summary;
  return o;
}

Outcome finite_identity(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  std::uint64_t seed = derive_seed(kSeed, 8);
  for (const auto& item : corpus) {
    const Gens g = gens_of(item.t);
    const Index expected = item.t.n() - item.t.dim();
    const DeficiencyReport rep = deficiency_indices(item.t, 10, seed, kTol);
    o.require(rep.d_plus == expected && rep.d_minus == expected && rep.constancy_ok,
              [&] { return item.name + ": indices differ from n - dim T"; });
    for (const Complex lambda : half_plane_samples(10, seed++)) {
      const Index lib = deficiency_space(item.t, lambda, kTol).rank();
      const Index oracle = defect(g, lambda);
      o.require(lib == expected && oracle == expected, [&] {
        std::ostringstream s;
        s << item.name << ": at " << lambda << " rank " << lib << " oracle " << oracle << " expected " << expected;
        return s.str();
      });
    }
  }
  if (o.ok) o.note = std::to_string(corpus.size()) + " relations, +-i and 20 sampled points each";
  return o;
}

Outcome conversion(const std::vector<CorpusItem>& pairs) {
  Outcome o;
  Rng rng(derive_seed(kSeed, 9));
  const std::vector<double> eps = epsilon_grid();
  for (const auto& item : pairs) {
    const Grams g = grams(gens_of(item.t), gens_of(*item.s));
    const Matrix d = dom_of(gens_of(item.t));
    for (double b : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const double a = minimal_a_oracle(g, b) + 1e-7;
      // Quadratic (a, b) holds, hence so does linear (a, b).
      const RelBoundCertificate quad{a, b, BoundVariant::quadratic, item.name};
      const RelBoundCertificate lin = to_linear(quad);
      o.require(quadratic_holds(g, a, b) && certify_bound(item.t, *item.s, lin, 50, rng.next_u64(), kTol).holds(),
                [&] { return item.name + fmt(": linear certificate (%.6g, %.6g) rejected", a, b); });
      for (int k = 0; k < 20 && d.cols() > 0; ++k) {
        const Vector x = random_in(d, rng);
        const double sx = coset_min(gens_of(*item.s), x);
        const double tx = coset_min(gens_of(item.t), x);
        o.require(sx <= a + b * tx + 1e-9, [&] { return item.name + ": sampled vector violates the linear bound"; });
      }
      for (double e : eps) {
        const RelBoundCertificate q = to_quadratic(lin, e);
        o.require(quadratic_holds(g, q.a, q.b) && certify_bound(item.t, *item.s, q, 0, 0, kTol).holds(), [&] {
          return item.name + fmt(": converted certificate fails at eps %.3g (a' %.6g, b' %.6g)", e, q.a, q.b);
        });
      }
    }
  }
  if (o.ok) o.note = std::to_string(pairs.size()) + " pairs x 5 values of b x " + std::to_string(eps.size()) + " eps";
  return o;
}

Outcome norm_oracles(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  Rng rng(derive_seed(kSeed, 10));
  // Generic relations (usually not Hermitian) mixed with the corpus.
  std::vector<Relation> rels;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 8);
    const Index k = static_cast<Index>(rng.next_u64() % (2 * n + 1));
    rels.push_back(k ? from_generators(gaussian_matrix(2 * n, k, rng), kTol) : Relation(n));
  }
  for (const auto& item : corpus) rels.push_back(item.t);
  long pairs = 0;
  double worst = 0.0;
  for (std::size_t i = 0; pairs < 500; i = (i + 1) % rels.size()) {
    const Gens g = gens_of(rels[i]);
    const Matrix d = dom_of(g);
    if (d.cols() == 0) continue;
    const Vector x = random_in(d, rng) * rng.uniform(0.1, 10.0);
    const double lib = norm_at(rels[i], x, kTol);
    const double oracle = coset_min(g, x);
    worst = std::max(worst, std::abs(lib - oracle));
    o.require(std::abs(lib - oracle) <= 1e-9, [&] { return fmt("norm_at %.15g, least squares %.15g", lib, oracle); });
    ++pairs;
  }
  // Supremum of pairings with unit vectors orthogonal to T(0).
  long sampled = 0;
  for (std::size_t i = 0; i < rels.size() && sampled < 20; i += 7) {
    const Gens g = gens_of(rels[i]);
    const Matrix d = dom_of(g);
    if (d.cols() == 0) continue;
    ++sampled;
    const Index n = g.n();
    const Vector x = random_in(d, rng);
    const double value = norm_at(rels[i], x, kTol);
    const Matrix m = mv_of(g);
    const Matrix k = null_basis(g.x);
    const Vector f0 = g.f * lstsq(g.x, x);
    const Vector rep = f0 - m * (m.adjoint() * f0);
    const Matrix perp = orth(Matrix::Identity(n, n) - projector(m));
    double best_line = 0.0, best_perp = 0.0;
    for (int s = 0; s < 10000; ++s) {
      // Any element of T(x) pairs the same way against T(0)^perp.
      Vector f = f0;
      if (k.cols()) f += g.f * k * gaussian_matrix(k.cols(), 1, rng).col(0);
      if (perp.cols()) best_perp = std::max(best_perp, std::abs(random_in(perp, rng).dot(f)));
      // A round-off representative has no meaningful direction; its value 0 is attained anyway.
      if (rep.norm() > 1e-12) best_line = std::max(best_line, std::abs((rep * std::polar(1.0, rng.uniform(0.0, kTwoPi)) / rep.norm()).dot(f)));
    }
    if (rep.norm() <= 1e-12) best_line = value;
    o.require(best_perp <= value + 1e-12 && best_line <= value + 1e-12 && value - best_line <= 1e-6, [&] {
      return fmt("factorization %.15g, sampled %.15g / %.15g", value, best_line, best_perp);
    });
  }
  if (o.ok) o.note = std::to_string(pairs) + fmt(" (T, x), max |difference| %.2g", worst) + ", 20 x 1e4 pairings";
  return o;
}

Outcome cli_contract(const std::vector<CorpusItem>& corpus, const std::vector<CorpusItem>& pairs) {
  Outcome o;
  double worst = 0.0;
  auto round_trip = [&](const std::string& name, const Relation& t) {
    const Relation back = relation_from_json(Json::parse(relation_to_json(t).dump()), kTol);
    const double diff = (back.graph().projector() - t.graph().projector()).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    o.require(diff <= 1e-12, [&] { return name + fmt(": projector difference %.3g", diff); });
  };
  for (const auto& item : corpus) round_trip(item.name, item.t);
  for (const auto& item : pairs) round_trip(item.name + "/S", *item.s);
  std::ostringstream out, err;
  const int code = run_command({"verify", "--suite", "all"}, out, err);
  o.require(code == exit_pass, [&] { return "verify --suite all exited " + std::to_string(code); });
  if (o.ok) o.note = fmt("max projector difference %.2g; verify --suite all exit 0", worst);
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const std::vector<CorpusItem> corpus = hermitian_corpus();
  const std::vector<CorpusItem> pairs = pair_corpus();
  std::printf("corpus: %zu Hermitian relations, %zu pairs, seed %llu\n", corpus.size(), pairs.size(),
              static_cast<unsigned long long>(kSeed));

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Pythagoras identity |(T-zI)x|^2 = |(T-aI)x|^2 + b^2|x|^2 within 1e-9(1+|x|^2)",
       [&] { return pythagoras(corpus); }},
      {2, "resolvent bound |(T-zI)^-1| <= 1/|Im z| + 1e-9", [&] { return resolvent_bound(corpus); }},
      {3, "projector gap <= 2c|k| + 1e-8, analytic family to 1e-10", [&] { return projector_gap(corpus); }},
      {4, "d(T+S) = d(T) under b < 1 bounds, homotopy rank constant", [&] { return index_invariance(pairs); }},
      {5, "d(T+S) <= d(T) under b = 1 linear bounds, S = -T gives 0", [&] { return unit_bound_inequality(pairs, corpus); }},
      {6, "T+S self-adjoint iff T self-adjoint (b < 1)", [&] { return selfadjoint_equivalence(pairs); }},
      {7, "coset, norm, recomposition, inclusion and orthogonality laws (>= 50 each)", [] { return law_suites(); }},
      {8, "d+- = n - dim T, constant over 10 points per half-plane", [&] { return finite_identity(corpus); }},
      {9, "linear <-> quadratic certificate conversion over the eps grid", [&] { return conversion(pairs); }},
      {10, "norm_at = least-squares coset minimum (1e-9); pairing supremum (1e-6)", [&] { return norm_oracles(corpus); }},
      {11, "file round-trip 1e-12; verify --suite all exits 0", [&] { return cli_contract(corpus, pairs); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    if (!r.ok) ++failed;
    std::printf("%s %2d  %s  [%ld checks, %.1fs] %s\n", r.ok ? "PASS" : "FAIL", c.id, c.title, r.instances, secs,
                r.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              std::chrono::duration<double>(clock::now() - start).count());
  return failed == 0 ? 0 : 1;
}
