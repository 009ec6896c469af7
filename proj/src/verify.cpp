#include "relcalc/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "relcalc/deficiency.hpp"
#include "relcalc/perturbation.hpp"
#include "relcalc/quotient.hpp"
#include "relcalc/random.hpp"

namespace relcalc {

std::string_view check_token(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "unknown";
}

Json check_to_json(const CheckResult& c) {
  return Json{{"name", c.name},
              {"anchor", c.anchor},
              {"status", check_token(c.status)},
              {"instances", c.instances},
              {"witness", c.witness}};
}

namespace {

// Counts instances of one law and keeps the first counterexample.
class Tally {
 public:
  Tally(std::string name, std::string anchor) : name_(std::move(name)), anchor_(std::move(anchor)) {}

  bool record(bool ok, const std::function<Json()>& witness) {
    ++instances_;
    if (!ok && !failed_) {
      failed_ = true;
      witness_ = witness();
    }
    return ok;
  }

  void fail(Json witness) {
    if (!failed_) witness_ = std::move(witness);
    failed_ = true;
  }

  int instances() const { return instances_; }

  CheckResult result() const {
    CheckResult r{name_, anchor_, CheckStatus::pass, instances_, witness_};
    if (failed_) {
      r.status = CheckStatus::fail;
    } else if (instances_ == 0) {
      r.status = CheckStatus::skip;
    }
    return r;
  }

 private:
  std::string name_;
  std::string anchor_;
  int instances_ = 0;
  bool failed_ = false;
  Json witness_;
};

Json witness(const std::string& item, const std::string& detail, Json extra = Json::object()) {
  Json w{{"item", item}, {"detail", detail}};
  for (auto it = extra.begin(); it != extra.end(); ++it) w[it.key()] = it.value();
  return w;
}

struct Named {
  std::string name;
  Relation t;
};

struct NamedPair {
  std::string name;
  Relation t;
  Relation s;
};

// Lazily built corpora shared by the suites of one run.
class Context {
 public:
  Context(const SuiteOptions& opts, const TolerancePolicy& tol) : opts_(opts), tol_(tol) {}

  const std::vector<CorpusItem>& relations() {
    if (!relations_) relations_ = relation_suite(opts_.seed, opts_.sizes, opts_.replicas, tol_);
    return *relations_;
  }

  const std::vector<CorpusItem>& pairs() {
    if (!pairs_) {
      pairs_ = pair_suite(derive_seed(opts_.seed, 7), opts_.sizes, std::max(1, opts_.replicas / 2), tol_);
    }
    return *pairs_;
  }

  /// Unstructured relations (generally not Hermitian), sizes capped at 8.
  const std::vector<Named>& generic() {
    if (!generic_) {
      generic_.emplace();
      Rng rng(derive_seed(opts_.seed, 11));
      for (int i = 0; i < 60; ++i) {
        const Index n = small_size(rng);
        const Index k = static_cast<Index>(rng.next_u64() % (2 * n + 1));
        generic_->push_back({"generic-" + std::to_string(i),
                             from_generators(gaussian_matrix(2 * n, k, rng), tol_)});
      }
    }
    return *generic_;
  }

  /// Hermitian relations with independent domain, operator and multivalued part.
  const std::vector<Named>& hermitian() {
    if (!hermitian_) {
      hermitian_.emplace();
      Rng rng(derive_seed(opts_.seed, 13));
      for (int i = 0; i < 60; ++i) {
        const Index n = small_size(rng);
        const Frame d = orthonormalize(gaussian_matrix(n, rng.next_u64() % (n + 1), rng), tol_);
        const Frame room = complement(d);
        const Frame m = orthonormalize(
            room.basis() * gaussian_matrix(room.rank(), rng.next_u64() % (room.rank() + 1), rng), tol_);
        const Matrix g = gaussian_matrix(n, n, rng);
        const Matrix h = 0.5 * (g + g.adjoint());
        Matrix gens = Matrix::Zero(2 * n, d.rank() + m.rank());
        gens.topLeftCorner(n, d.rank()) = d.basis();
        gens.bottomLeftCorner(n, d.rank()) = h * d.basis();
        gens.bottomRightCorner(n, m.rank()) = m.basis();
        hermitian_->push_back({"hermitian-" + std::to_string(i),
                               gens.cols() ? from_generators(gens, tol_) : Relation(n)});
      }
    }
    return *hermitian_;
  }

  Rng rng(std::uint64_t stream) const { return Rng(derive_seed(opts_.seed, 1000 + stream)); }
  const SuiteOptions& opts() const { return opts_; }
  const TolerancePolicy& tol() const { return tol_; }

 private:
  Index small_size(Rng& rng) const {
    std::vector<Index> small;
    for (Index n : opts_.sizes) {
      if (n <= 8) small.push_back(n);
    }
    if (small.empty()) small.push_back(opts_.sizes.front());
    return small[rng.next_u64() % small.size()];
  }

  SuiteOptions opts_;
  TolerancePolicy tol_;
  std::optional<std::vector<CorpusItem>> relations_;
  std::optional<std::vector<CorpusItem>> pairs_;
  std::optional<std::vector<Named>> generic_;
  std::optional<std::vector<Named>> hermitian_;
};

template <class F>
void for_each_relation(Context& ctx, bool hermitian_only, F&& f) {
  for (const auto& item : ctx.relations()) f(item.name, item.t);
  for (const auto& item : ctx.hermitian()) f(item.name, item.t);
  if (!hermitian_only) {
    for (const auto& item : ctx.generic()) f(item.name, item.t);
  }
}

int sample_count(const Context& ctx, int cap) { return std::max(1, std::min(ctx.opts().samples, cap)); }

// Relation spanned by {(v, v) : v in F} and {0} x M.
Relation diagonal_plus_mv(const Frame& f, const Frame& m, Index n, const TolerancePolicy& tol) {
  Matrix gens = Matrix::Zero(2 * n, f.rank() + m.rank());
  gens.topLeftCorner(n, f.rank()) = f.basis();
  gens.bottomLeftCorner(n, f.rank()) = f.basis();
  gens.bottomRightCorner(n, m.rank()) = m.basis();
  return gens.cols() ? from_generators(gens, tol) : Relation(n);
}

// ---------------------------------------------------------------- suites

std::vector<CheckResult> suite_lemma21(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally coset("coset law", "T(x) = {y} + T(0) for every y in T(x)");
  Tally range_side("range-side composition", "(T T^-1)(y) = {y} + T(0) on R(T)");
  Tally domain_side("domain-side composition", "(T^-1 T)(x) = {x} + T^-1(0) on D(T)");
  Rng rng = ctx.rng(21);
  for_each_relation(ctx, false, [&](const std::string& name, const Relation& t) {
    const Parts p = parts(t, tol);
    for (int k = 0; k < sample_count(ctx, 5) && t.dim() > 0; ++k) {
      // Random graph element (x, f): f - y must lie in T(0) for the computed y in T(x).
      const Vector c = gaussian_matrix(t.dim(), 1, rng).col(0);
      const Vector x = t.x_block() * c;
      const Vector f = t.f_block() * c;
      const auto y = some_image(t, x, tol);
      bool ok = y.has_value();
      double worst = 0.0;
      if (ok) {
        worst = distance(Vector(f - *y), p.mv) / std::max(1.0, f.norm());
        for (Index j = 0; j < p.mv.rank(); ++j) {
          ok = ok && t.contains(x, *y + p.mv.basis().col(j), tol);
        }
        ok = ok && worst <= tol.containment_tol;
      }
      coset.record(ok, [&] { return witness(name, "f - y not in T(0)", {{"residual", worst}}); });
    }
    const Relation tti = compose(t, inverse(t), tol);
    range_side.record(same_relation(tti, diagonal_plus_mv(p.range, p.mv, t.n(), tol), tol), [&] {
      return witness(name, "T T^-1 differs from {(y, y + m)}",
                     {{"dim", tti.dim()}, {"expected_dim", p.range.rank() + p.mv.rank()}});
    });
    const Relation tit = compose(inverse(t), t, tol);
    domain_side.record(same_relation(tit, diagonal_plus_mv(p.domain, p.null, t.n(), tol), tol), [&] {
      return witness(name, "T^-1 T differs from {(x, x + k)}",
                     {{"dim", tit.dim()}, {"expected_dim", p.domain.rank() + p.null.rank()}});
    });
  });
  return {coset.result(), range_side.result(), domain_side.result()};
}

std::vector<CheckResult> suite_lemma22(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally dist("norm as a distance", "||T(x)|| = d(T(x), 0) = d(T(x), T(0))");
  Tally scale("homogeneity", "||(aT)(x)|| = |a| ||T(x)|| and ||aT|| = |a| ||T||");
  Tally tri("triangle law", "||(S+T)(x)|| <= ||S(x)|| + ||T(x)||, ||S+T|| <= ||S|| + ||T||");
  Rng rng = ctx.rng(22);
  for_each_relation(ctx, false, [&](const std::string& name, const Relation& t) {
    const Parts p = parts(t, tol);
    if (!p.domain.empty()) {
      for (int k = 0; k < sample_count(ctx, 5); ++k) {
        const Vector x = rng.uniform(0.1, 3.0) * random_unit_in(p.domain, rng);
        const auto y0 = some_image(t, x, tol);
        if (!y0) {
          dist.record(false, [&] { return witness(name, "no image for a domain vector"); });
          continue;
        }
        // Any member of T(x), not just the computed one.
        const Vector y = *y0 + (p.mv.empty() ? Vector(Vector::Zero(t.n())) : Vector(3.0 * random_unit_in(p.mv, rng)));
        const double v = norm_at(t, x, tol);
        const double d0 = distance(y, p.mv);
        const double dq = quotient_rep(y, p.mv).norm();
        const double err = std::max(std::abs(v - d0), std::abs(v - dq));
        dist.record(err <= 1e-9 * (1.0 + v), [&] {
          return witness(name, "norm and distances disagree", {{"norm", v}, {"distance", d0}});
        });
        const Complex alpha(rng.normal(), rng.normal());
        const double va = norm_at(scalar_mul(alpha, t, tol), x, tol);
        scale.record(std::abs(va - std::abs(alpha) * v) <= 1e-9 * (1.0 + std::abs(alpha) * v), [&] {
          return witness(name, "pointwise homogeneity", {{"alpha_abs", std::abs(alpha)}, {"value", va}});
        });
      }
    }
    const Complex alpha(0.0, 2.0);
    const double nt = relation_norm(t, tol);
    const double na = relation_norm(scalar_mul(alpha, t, tol), tol);
    scale.record(std::abs(na - 2.0 * nt) <= 1e-9 * (1.0 + nt), [&] {
      return witness(name, "||2i T|| != 2 ||T||", {{"norm", nt}, {"scaled", na}});
    });
  });
  const auto& gen = ctx.generic();
  for (std::size_t i = 0; i + 1 < gen.size(); ++i) {
    const Relation& t = gen[i].t;
    const Relation& s = gen[i + 1].t;
    if (t.n() != s.n()) continue;
    const Relation sum = op_sum(t, s, tol);
    const Frame common = domain_of(sum, tol);
    for (int k = 0; k < sample_count(ctx, 5) && !common.empty(); ++k) {
      const Vector x = random_unit_in(common, rng);
      const double lhs = norm_at(sum, x, tol);
      const double rhs = norm_at(t, x, tol) + norm_at(s, x, tol);
      tri.record(lhs <= rhs + 1e-9, [&] {
        return witness(gen[i].name + "+" + gen[i + 1].name, "pointwise triangle", {{"lhs", lhs}, {"rhs", rhs}});
      });
    }
    const double lhs = relation_norm(sum, tol);
    const double rhs = relation_norm(t, tol) + relation_norm(s, tol);
    tri.record(lhs <= rhs + 1e-9, [&] {
      return witness(gen[i].name + "+" + gen[i + 1].name, "norm triangle", {{"lhs", lhs}, {"rhs", rhs}});
    });
  }
  for (const auto& item : ctx.pairs()) {
    const Relation sum = op_sum(item.t, *item.s, tol);
    const double lhs = relation_norm(sum, tol);
    const double rhs = relation_norm(item.t, tol) + relation_norm(*item.s, tol);
    tri.record(lhs <= rhs + 1e-9, [&] { return witness(item.name, "norm triangle", {{"lhs", lhs}, {"rhs", rhs}}); });
  }
  return {dist.result(), scale.result(), tri.result()};
}

std::vector<CheckResult> suite_lemma24(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally law("recomposition law", "(T - S) + S = T iff D(T) in D(S) and S(0) in T(0)");
  Tally both("both directions exercised", "the law is tested with the hypotheses holding and failing");
  int positive = 0, negative = 0;
  auto check = [&](const std::string& name, const Relation& t, const Relation& s) {
    const InclusionReport r = inclusion_report(t, s, tol);
    (r.dom_ok && r.mv_ok ? positive : negative) += 1;
    law.record(r.consistent(), [&] {
      return witness(name, "recomposition disagrees with the inclusions",
                     {{"dom_ok", r.dom_ok}, {"mv_ok", r.mv_ok}, {"recompose_ok", r.recompose_ok}});
    });
  };
  for (const auto& item : ctx.pairs()) check(item.name, item.t, *item.s);
  const auto& gen = ctx.generic();
  for (std::size_t i = 0; i + 1 < gen.size(); ++i) {
    if (gen[i].t.n() == gen[i + 1].t.n()) check(gen[i].name + "," + gen[i + 1].name, gen[i].t, gen[i + 1].t);
    // Swapped roles of a pair from the corpus mostly break D(T) in D(S).
  }
  for (const auto& item : ctx.pairs()) check(item.name + "-swapped", *item.s, item.t);
  both.record(positive > 0 && negative > 0, [&] {
    return witness("corpus", "only one side of the equivalence was reached",
                   {{"positive", positive}, {"negative", negative}});
  });
  return {law.result(), both.result()};
}

std::vector<CheckResult> suite_lemma25(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally law("multivalued inclusion", "T self-adjoint, S Hermitian, D(T) in D(S) => S(0) in T(0)");
  Rng rng = ctx.rng(25);
  for (const auto& item : ctx.relations()) {
    if (!item.selfadjoint) continue;
    const Relation& t = item.t;
    const Index n = t.n();
    const Frame dt = domain_of(t, tol);
    for (int k = 0; k < sample_count(ctx, 3); ++k) {
      // S: Hermitian operator on a random E containing D(T), plus {0} x M with M in E^perp.
      const Frame room = complement(dt);
      const Index extra = static_cast<Index>(rng.next_u64() % (room.rank() + 1));
      Matrix eg(n, dt.rank() + extra);
      eg << dt.basis(), room.basis() * gaussian_matrix(room.rank(), extra, rng);
      const Frame e = orthonormalize(eg, tol);
      const Frame eperp = complement(e);
      const Frame m = orthonormalize(
          eperp.basis() * gaussian_matrix(eperp.rank(), rng.next_u64() % (eperp.rank() + 1), rng), tol);
      const Matrix g = gaussian_matrix(n, n, rng);
      const Matrix h = 0.5 * (g + g.adjoint());
      Matrix gens = Matrix::Zero(2 * n, e.rank() + m.rank());
      gens.topLeftCorner(n, e.rank()) = e.basis();
      gens.bottomLeftCorner(n, e.rank()) = h * e.basis();
      gens.bottomRightCorner(n, m.rank()) = m.basis();
      const Relation s = gens.cols() ? from_generators(gens, tol) : Relation(n);
      if (!is_hermitian(s, tol) || !is_subset(dt, domain_of(s, tol), tol)) {
        law.fail(witness(item.name, "generated S violates the hypotheses"));
        continue;
      }
      const bool ok = is_subset(mv_part(s, tol), mv_part(t, tol), tol);
      law.record(ok, [&] { return witness(item.name, "S(0) not contained in T(0)", {{"mv_dim_s", m.rank()}}); });
    }
  }
  for (const auto& item : ctx.pairs()) {
    if (!item.selfadjoint) continue;
    const InclusionReport r = inclusion_report(item.t, *item.s, tol);
    if (!r.dom_ok || !is_hermitian(*item.s, tol)) continue;
    law.record(r.mv_ok, [&] { return witness(item.name, "S(0) not contained in T(0)"); });
  }
  return {law.result()};
}

std::vector<CheckResult> suite_lemma26(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally law("domain orthogonal to multivalued part", "T Hermitian => D(T) is orthogonal to T(0)");
  for_each_relation(ctx, true, [&](const std::string& name, const Relation& t) {
    const Parts p = parts(t, tol);
    const double cross = p.domain.empty() || p.mv.empty()
                             ? 0.0
                             : (p.domain.basis().adjoint() * p.mv.basis()).cwiseAbs().maxCoeff();
    law.record(cross <= tol.cmp_atol, [&] { return witness(name, "D(T) not orthogonal to T(0)", {{"max_inner", cross}}); });
  });
  return {law.result()};
}

std::vector<CheckResult> suite_lemma29(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally gap("projector gap bound", "||P_k - P_0|| <= 2c|k| for |k| <= 1/(2c)");
  Tally pointwise("lower bound along the family", "||B(x)|| <= 2c ||(A + kB)(x)|| for |k| <= 1/(2c)");
  Tally analytic("analytic example", "gap(k) = |k| / sqrt(1 + |k|^2) for A = {(e1, e2)}, B = {(e1, e1)}");
  Tally pre("preconditions", "D(A) in D(B), B(0) in A(0), ||B(x)|| <= c||A(x)|| verified before sweeping");
  Rng rng = ctx.rng(29);
  for_each_relation(ctx, false, [&](const std::string& name, const Relation& a) {
    const OperatorPart ap = operator_part(a, tol);
    if (ap.domain().empty()) return;
    const Index n = a.n();
    const Matrix r = gaussian_matrix(n, n, rng);
    const double c = std::max(spectral_norm(r), 1e-3);
    const Relation b = from_operator(r * ap.standard_matrix(), ap.domain(), tol);
    std::vector<Complex> ks{Complex(1.0 / (2 * c), 0.0)};
    for (int j = 0; j < 6; ++j) ks.push_back(std::polar(rng.uniform(0.0, 1.0 / (2 * c)), rng.uniform(0.0, 6.283185307179586)));
    const ProjectorFamily pf = projector_family(a, b, c, ks, tol);
    if (!pre.record(pf.preconditions_ok(), [&] {
          return witness(name, "constructed triple fails a precondition",
                         {{"dom_ok", pf.dom_ok}, {"mv_ok", pf.mv_ok}, {"bound_residual", pf.bound_residual}});
        })) {
      return;
    }
    for (const auto& p : pf.points) {
      gap.record(p.gap <= 2 * c * std::abs(p.k) + 1e-8, [&] {
        return witness(name, "gap above 2c|k|", {{"k", complex_to_json(p.k)}, {"gap", p.gap}, {"bound", p.bound}});
      });
      const Relation akb = op_sum(a, scalar_mul(p.k, b, tol), tol);
      for (int s = 0; s < 3; ++s) {
        const Vector x = random_unit_in(ap.domain(), rng);
        const double lhs = norm_at(b, x, tol);
        const double rhs = 2 * c * norm_at(akb, x, tol);
        pointwise.record(lhs <= rhs + 1e-8, [&] {
          return witness(name, "||B(x)|| above 2c||(A+kB)(x)||", {{"k", complex_to_json(p.k)}, {"lhs", lhs}, {"rhs", rhs}});
        });
      }
    }
  });
  Matrix ga(4, 1), gb(4, 1);
  ga << 1, 0, 0, 1;
  gb << 1, 0, 1, 0;
  const Relation a = from_generators(ga, tol);
  const Relation b = from_generators(gb, tol);
  std::vector<Complex> ks;
  for (int j = 0; j <= 20; ++j) ks.push_back(std::polar(0.025 * j, 0.3 * j));
  const ProjectorFamily pf = projector_family(a, b, 1.0, ks, tol);
  pre.record(pf.preconditions_ok(), [&] { return witness("analytic", "preconditions"); });
  for (const auto& p : pf.points) {
    const double k = std::abs(p.k);
    const double expected = k / std::sqrt(1 + k * k);
    analytic.record(std::abs(p.gap - expected) <= 1e-10 && p.gap <= 2 * k + 1e-8, [&] {
      return witness("analytic", "gap differs from |k|/sqrt(1+|k|^2)", {{"k", k}, {"gap", p.gap}, {"expected", expected}});
    });
  }
  return {pre.result(), gap.result(), pointwise.result(), analytic.result()};
}

std::vector<CheckResult> suite_lemma31(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally pyth("Pythagoras identity", "||(T - zI)(x)||^2 = ||(T - aI)(x)||^2 + b^2 ||x||^2, z = a + ib");
  Tally res("resolvent bound", "||(T - zI)^-1|| <= 1 / |Im z|");
  Tally excl("no nonreal eigenvalues", "N(T - zI) = {0} for nonreal z");
  Rng rng = ctx.rng(31);
  for_each_relation(ctx, true, [&](const std::string& name, const Relation& t) {
    const Frame dom = domain_of(t, tol);
    for (int k = 0; k < sample_count(ctx, 20); ++k) {
      const double im = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 10.0);
      const Complex z(rng.uniform(-10.0, 10.0), im);
      if (!dom.empty()) {
        const Vector x = rng.uniform(0.1, 10.0) * random_unit_in(dom, rng);
        const double r = shifted_norm_residual(t, x, z, tol);
        pyth.record(r <= 1e-9 * (1.0 + x.squaredNorm()), [&] {
          return witness(name, "identity residual too large", {{"z", complex_to_json(z)}, {"residual", r}, {"x", vector_to_json(x)}});
        });
      }
      if (k < 5) {
        const double rn = resolvent_norm(t, z, tol);
        res.record(rn <= 1.0 / std::abs(im) + 1e-9, [&] {
          return witness(name, "resolvent norm above 1/|Im z|", {{"z", complex_to_json(z)}, {"norm", rn}});
        });
        const Frame ker = null_of(shift(t, z, tol), tol);
        excl.record(ker.empty(), [&] { return witness(name, "nonreal eigenvalue", {{"z", complex_to_json(z)}}); });
      }
    }
  });
  return {pyth.result(), res.result(), excl.result()};
}

std::vector<CheckResult> suite_lemma32(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally ex("transform examples", "(a, b) -> (a/(1-b), b/(1-b)); (1, 1/2) -> (2, 1); b >= 1 rejected");
  Tally law("transformed certificate", "S is (T + tS)-bounded with (a/(1-b), b/(1-b)) for t in [0, 1]");
  RelBoundCertificate c0{1.0, 0.5, BoundVariant::linear, "example"};
  const RelBoundCertificate c1 = shift_certificate(c0, 0.5);
  ex.record(std::abs(c1.a - 2.0) < 1e-15 && std::abs(c1.b - 1.0) < 1e-15,
            [&] { return witness("example", "(1, 1/2) mapped wrongly", {{"a", c1.a}, {"b", c1.b}}); });
  const RelBoundCertificate c2 = shift_certificate({0.7, 0.0, BoundVariant::linear, ""}, 0.3);
  ex.record(c2.a == 0.7 && c2.b == 0.0, [&] { return witness("example", "(a, 0) not fixed"); });
  bool threw = false;
  try {
    shift_certificate({1.0, 1.0, BoundVariant::linear, ""}, 0.5);
  } catch (const TransformError&) {
    threw = true;
  }
  ex.record(threw, [&] { return witness("example", "b = 1 accepted"); });

  for (const auto& item : ctx.pairs()) {
    const Relation& t = item.t;
    const Relation& s = *item.s;
    const double b = 0.4;
    const double a = minimal_a(restricted_grams(t, s, tol), b);
    const RelBoundCertificate cert{a, b, BoundVariant::linear, item.name};
    for (double tt : {0.0, 0.3, 0.7, 1.0}) {
      const RelBoundCertificate shifted = shift_certificate(cert, tt);
      const Relation r = op_sum(t, scalar_mul(tt, s, tol), tol);
      const CertifyResult cr = certify_bound(r, s, shifted, 50, derive_seed(ctx.opts().seed, 32), tol);
      law.record(cr.holds(), [&] {
        return witness(item.name, "transformed certificate fails",
                       {{"t", tt}, {"a", shifted.a}, {"b", shifted.b}, {"residual", cr.worst_residual},
                        {"x", cr.witness ? vector_to_json(*cr.witness) : Json()}});
      });
    }
  }
  return {ex.result(), law.result()};
}

std::vector<CheckResult> suite_thm31(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally idx("index invariance", "d(T+S) = d(T) when S is (T+tS)-bounded along the path");
  Tally homo("homotopy rank constancy", "deficiency ranks of T + tS stay constant on [0, 1]");
  Tally ex("homotopy example", "T = {(e1, 0)}, S = {(e1, e1)}: rank 1 throughout");
  InvarianceOptions io;
  io.samples = 0;
  io.t_grid = 5;
  for (const auto& item : ctx.pairs()) {
    const InvarianceVerdict v = invariance_report(item.t, *item.s, InvarianceMode::homotopy_bounded, tol, io);
    if (v.status == VerdictStatus::skip) continue;
    idx.record(v.status == VerdictStatus::pass, [&] {
      return witness(item.name, v.conclusion,
                     {{"base", {v.base.plus, v.base.minus}}, {"perturbed", {v.perturbed.plus, v.perturbed.minus}}});
    });
    const HomotopyTrace tr = homotopy_sweep(item.t, *item.s, 5, tol);
    homo.record(tr.converged && tr.rank_constant() && tr.points.front().rank_plus == v.base.plus &&
                    tr.points.back().rank_plus == v.perturbed.plus,
                [&] {
                  return witness(item.name, "homotopy did not certify constancy",
                                 {{"converged", tr.converged}, {"points", tr.points.size()}});
                });
  }
  Matrix gt(4, 1), gs(4, 1);
  gt << 1, 0, 0, 0;
  gs << 1, 0, 1, 0;
  const Relation t = from_generators(gt, tol);
  const Relation s = from_generators(gs, tol);
  const HomotopyTrace tr = homotopy_sweep(t, s, 5, tol);
  bool ok = tr.converged && tr.rank_constant();
  for (const auto& p : tr.points) ok = ok && p.rank_plus == 1 && p.rank_minus == 1;
  const InvarianceVerdict v = invariance_report(t, s, InvarianceMode::homotopy_bounded, tol);
  ok = ok && v.status == VerdictStatus::pass && v.base == IndexPair{1, 1} && v.perturbed == IndexPair{1, 1};
  ex.record(ok, [&] { return witness("example", "ranks or indices differ from (1, 1)"); });
  return {idx.result(), homo.result(), ex.result()};
}

std::vector<CheckResult> suite_thm32(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally ineq("index inequality", "||S(x)|| <= a||x|| + ||T(x)|| => d(T+S) <= d(T)");
  Tally neg("S = -T", "S = -T satisfies the b = 1 bound with a = 0 and d(T+S) = d(T) = 0");
  InvarianceOptions io;
  io.samples = 200;
  for (const auto& item : ctx.pairs()) {
    const InvarianceVerdict v = invariance_report(item.t, *item.s, InvarianceMode::unit_bound, tol, io);
    if (v.status == VerdictStatus::skip) continue;
    ineq.record(v.status == VerdictStatus::pass, [&] { return witness(item.name, v.conclusion); });
  }
  for (const auto& item : ctx.relations()) {
    if (!item.selfadjoint || !classify(item.t, tol).is_operator) continue;
    const Relation s = scalar_mul(-1.0, item.t, tol);
    InvarianceOptions with_cert = io;
    with_cert.certificate = RelBoundCertificate{0.0, 1.0, BoundVariant::linear, item.name};
    const InvarianceVerdict v = invariance_report(item.t, s, InvarianceMode::unit_bound, tol, with_cert);
    neg.record(v.status == VerdictStatus::pass && v.base == IndexPair{0, 0} && v.perturbed == IndexPair{0, 0},
               [&] { return witness(item.name, v.conclusion, {{"status", status_token(v.status)}}); });
  }
  return {ineq.result(), neg.result()};
}

std::vector<CheckResult> suite_corollaries(Context& ctx) {
  const auto& tol = ctx.tol();
  InvarianceOptions io;
  io.samples = 200;
  io.t_grid = 5;
  std::vector<CheckResult> out;
  int sa_true = 0, sa_false = 0;
  for (InvarianceMode mode : all_modes()) {
    if (mode == InvarianceMode::homotopy_bounded || mode == InvarianceMode::unit_bound) continue;
    const std::string token(mode_token(mode));
    Tally tally(token, "");
    int passed = 0;
    for (const auto& item : ctx.pairs()) {
      const Relation other = mode == InvarianceMode::symmetric_difference ? op_sum(item.t, *item.s, tol) : *item.s;
      const InvarianceVerdict v = invariance_report(item.t, other, mode, tol, io);
      if (v.status == VerdictStatus::skip) continue;
      passed += v.status == VerdictStatus::pass ? 1 : 0;
      tally.record(v.status == VerdictStatus::pass, [&] { return witness(item.name, v.conclusion); });
      if (mode == InvarianceMode::selfadjointness) (is_selfadjoint(item.t, tol) ? sa_true : sa_false) += 1;
    }
    if (passed == 0) tally.fail(witness("corpus", "no pair satisfied the hypotheses of this mode"));
    CheckResult r = tally.result();
    switch (mode) {
      case InvarianceMode::bound_below_one: r.anchor = "b < 1 relative bound preserves deficiency indices"; break;
      case InvarianceMode::selfadjointness: r.anchor = "b < 1: T+S self-adjoint iff T self-adjoint"; break;
      case InvarianceMode::st_inverse_contraction: r.anchor = "N(T) in N(S), ||S T^-1|| < 1 preserves indices"; break;
      case InvarianceMode::accretive: r.anchor = "Re<f, g> >= 0 on the paired graph preserves indices"; break;
      case InvarianceMode::symmetric_difference: r.anchor = "V - T bounded by b(||T(x)|| + ||V(x)||), b < 1: d(V) = d(T)"; break;
      case InvarianceMode::essential_selfadjoint: r.anchor = "T self-adjoint, S symmetric with b = 1: T+S self-adjoint"; break;
      case InvarianceMode::unit_bound_sum_bounded: r.anchor = "b = 1 and S (T+S)-bounded preserves indices"; break;
      default: break;
    }
    out.push_back(std::move(r));
  }
  Tally both("self-adjointness equivalence, both directions", "pairs with T self-adjoint and with T only Hermitian");
  both.record(sa_true > 0 && sa_false > 0, [&] {
    return witness("corpus", "one direction unexercised", {{"selfadjoint", sa_true}, {"hermitian_only", sa_false}});
  });
  out.push_back(both.result());
  return out;
}

std::vector<CheckResult> suite_identity(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally law("finite-dimension identity", "d+ = d- = n - dim T for Hermitian T");
  Tally constancy("half-plane constancy", "d_lambda is constant on each open half-plane");
  std::uint64_t k = 0;
  for_each_relation(ctx, true, [&](const std::string& name, const Relation& t) {
    const DeficiencyReport r = deficiency_indices(t, 10, derive_seed(ctx.opts().seed, 100 + k++), tol);
    const Index expected = t.n() - t.dim();
    bool all = true;
    for (const auto& s : r.samples) all = all && s.index == expected;
    law.record(r.d_plus == expected && r.d_minus == expected && all, [&] {
      return witness(name, "index differs from n - dim T",
                     {{"d_plus", r.d_plus}, {"d_minus", r.d_minus}, {"expected", expected}});
    });
    constancy.record(r.constancy_ok, [&] { return witness(name, "index varies inside a half-plane"); });
  });
  return {law.result(), constancy.result()};
}

std::vector<CheckResult> suite_conversion(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally to_q("linear to quadratic", "linear (a, b) => quadratic ((1+1/eps)a^2, (1+eps)b^2) for every eps");
  Tally to_l("quadratic to linear", "quadratic (a', b') => linear (a', b')");
  Tally wit("refutations carry witnesses", "a failing linear certificate comes with x violating it");
  Rng rng = ctx.rng(40);
  for (const auto& item : ctx.pairs()) {
    const RestrictedGrams g = restricted_grams(item.t, *item.s, tol);
    for (double b : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const double a = minimal_a(g, b);
      // The quadratic frontier point holds; so does its linear reading.
      const RelBoundCertificate quad{a, b, BoundVariant::quadratic, item.name};
      const RelBoundCertificate lin = to_linear(quad);
      const CertifyResult lr = certify_bound(item.t, *item.s, lin, 50, 1, tol);
      to_l.record(lr.holds(), [&] { return witness(item.name, "linear reading of a quadratic certificate fails", {{"a", a}, {"b", b}}); });
      if (!lr.holds()) continue;
      for (double eps : epsilon_grid()) {
        const RelBoundCertificate q = to_quadratic(lin, eps);
        const CertifyResult qr = certify_bound(item.t, *item.s, q, 0, 1, tol);
        to_q.record(qr.holds(), [&] {
          return witness(item.name, "converted certificate fails",
                         {{"eps", eps}, {"a", q.a}, {"b", q.b}, {"residual", qr.worst_residual}});
        });
      }
    }
    // Random linear certificates: either all conversions hold or a witness is produced.
    for (int k = 0; k < 2; ++k) {
      const RelBoundCertificate lin{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), BoundVariant::linear, item.name};
      const CertifyResult r = certify_bound(item.t, *item.s, lin, 50, 2, tol);
      if (r.holds()) continue;
      bool ok = r.witness.has_value();
      if (ok) {
        const Vector& x = *r.witness;
        ok = norm_at(*item.s, x, tol) > lin.a * x.norm() + lin.b * norm_at(item.t, x, tol);
      }
      wit.record(ok, [&] { return witness(item.name, "fails verdict without a genuine witness", {{"a", lin.a}, {"b", lin.b}}); });
    }
  }
  return {to_q.result(), to_l.result(), wit.result()};
}

// min ||f|| over f in T(x), by least squares over the graph coefficients.
std::optional<double> coset_minimum(const Relation& t, const Vector& x) {
  const Matrix& xb = t.x_block();
  const Matrix& fb = t.f_block();
  if (t.dim() == 0) return x.norm() <= 1e-12 ? std::optional<double>(0.0) : std::nullopt;
  // Graph bases are orthonormal, so a fixed threshold separates rank from round-off.
  // The threshold must be set before compute(): the factorization depends on it.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(1e-10);
  cod.compute(xb);
  const Vector c0 = cod.solve(x);
  if ((xb * c0 - x).norm() > 1e-8 * std::max(1.0, x.norm())) return std::nullopt;
  Eigen::FullPivLU<Matrix> lu(xb);
  lu.setThreshold(1e-10);
  const Vector f0 = fb * c0;
  if (lu.rank() == xb.cols()) return f0.norm();
  const Matrix fk = fb * lu.kernel();
  Eigen::CompleteOrthogonalDecomposition<Matrix> codk;
  codk.setThreshold(1e-10);
  codk.compute(fk);
  const Vector z = codk.solve(-f0);
  return (f0 + fk * z).norm();
}

std::vector<CheckResult> suite_norms(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally oracle("coset minimization oracle", "||T(x)|| = min over f in T(x) of ||f||");
  Tally sup("supremum over pairings", "||T(x)|| = sup |<T(x), y>| over unit y, never exceeded");
  Rng rng = ctx.rng(50);
  for_each_relation(ctx, false, [&](const std::string& name, const Relation& t) {
    const Frame dom = domain_of(t, tol);
    if (dom.empty()) return;
    for (int k = 0; k < sample_count(ctx, 3); ++k) {
      const Vector x = rng.uniform(0.1, 3.0) * random_unit_in(dom, rng);
      const double v = norm_at(t, x, tol);
      const auto m = coset_minimum(t, x);
      oracle.record(m && std::abs(*m - v) <= 1e-9 * (1.0 + v), [&] {
        return witness(name, "norm differs from the coset minimum", {{"norm", v}, {"oracle", m ? Json(*m) : Json()}});
      });
      const auto y = some_image(t, x, tol);
      if (!y) continue;
      const Vector rep = quotient_rep(*y, mv_part(t, tol));
      double best = 0.0;
      bool never_above = true;
      const Frame full = Frame::full(t.n());
      for (int j = 0; j < 200; ++j) {
        const double p = std::abs(rep.dot(random_unit_in(full, rng)));
        never_above = never_above && p <= v + 1e-12;
        best = std::max(best, p);
      }
      if (v > 0) best = std::max(best, std::abs(rep.dot(rep / rep.norm())));
      sup.record(never_above && std::abs(best - v) <= 1e-8 * (1.0 + v), [&] {
        return witness(name, "pairing supremum mismatch", {{"norm", v}, {"sup", best}});
      });
    }
  });
  return {oracle.result(), sup.result()};
}

std::vector<CheckResult> suite_adjoint(Context& ctx) {
  const auto& tol = ctx.tol();
  Tally inv("involution", "T** = T");
  Tally pair("pairing identity", "<g, x> = <y, f> for (x, f) in T, (y, g) in T*; dim T + dim T* = 2n");
  Tally herm("Hermitian pairing", "<f, y> = <x, g> on T x T iff T is Hermitian");
  for_each_relation(ctx, false, [&](const std::string& name, const Relation& t) {
    const Relation ts = adjoint(t);
    inv.record(same_relation(adjoint(ts), t, tol), [&] { return witness(name, "T** differs from T"); });
    const Matrix cross = ts.f_block().adjoint() * t.x_block() - ts.x_block().adjoint() * t.f_block();
    const double defect = cross.size() ? cross.cwiseAbs().maxCoeff() : 0.0;
    pair.record(defect <= tol.cmp_atol && t.dim() + ts.dim() == 2 * t.n(), [&] {
      return witness(name, "pairing identity violated", {{"defect", defect}, {"dim", t.dim()}, {"adjoint_dim", ts.dim()}});
    });
    const Matrix self = t.f_block().adjoint() * t.x_block() - t.x_block().adjoint() * t.f_block();
    const double sd = self.size() ? self.cwiseAbs().maxCoeff() : 0.0;
    herm.record((sd <= tol.cmp_atol) == is_hermitian(t, tol), [&] {
      return witness(name, "pairing and classification disagree", {{"defect", sd}});
    });
  });
  return {inv.result(), pair.result(), herm.result()};
}

using SuiteFn = std::vector<CheckResult> (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"lemma21", suite_lemma21}, {"lemma22", suite_lemma22},   {"lemma24", suite_lemma24},
      {"lemma25", suite_lemma25}, {"lemma26", suite_lemma26},   {"lemma29", suite_lemma29},
      {"lemma31", suite_lemma31}, {"lemma32", suite_lemma32},   {"thm31", suite_thm31},
      {"thm32", suite_thm32},     {"corollaries", suite_corollaries}, {"identity", suite_identity},
      {"conversion", suite_conversion}, {"norms", suite_norms}, {"adjoint", suite_adjoint},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts,
                                   const TolerancePolicy& tol) {
  if (opts.sizes.empty()) throw std::invalid_argument("suite needs at least one size");
  Context ctx(opts, tol);
  std::vector<CheckResult> out;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    for (CheckResult& c : fn(ctx)) {
      c.name = suite + "/" + c.name;
      out.push_back(std::move(c));
    }
  }
  if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

}  // namespace relcalc
