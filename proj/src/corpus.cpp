#include "relcalc/corpus.hpp"

#include <cmath>
#include <numbers>

#include "relcalc/random.hpp"

namespace relcalc {

std::string_view kind_token(CorpusKind k) {
  switch (k) {
    case CorpusKind::cayley: return "cayley";
    case CorpusKind::restriction: return "restriction";
    case CorpusKind::pair: return "pair";
    case CorpusKind::jacobi: return "jacobi";
  }
  return "unknown";
}

std::optional<CorpusKind> parse_kind(std::string_view s) {
  for (auto k : {CorpusKind::cayley, CorpusKind::restriction, CorpusKind::pair, CorpusKind::jacobi}) {
    if (kind_token(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view profile_token(PairProfile p) {
  switch (p) {
    case PairProfile::zero: return "zero";
    case PairProfile::multiple: return "multiple";
    case PairProfile::bounded_random: return "bounded-random";
    case PairProfile::mv_matching_random: return "mv-matching-random";
    case PairProfile::full_random: return "full-random";
  }
  return "unknown";
}

std::optional<PairProfile> parse_profile(std::string_view s) {
  for (auto p : {PairProfile::zero, PairProfile::multiple, PairProfile::bounded_random,
                 PairProfile::mv_matching_random, PairProfile::full_random}) {
    if (profile_token(p) == s) return p;
  }
  return std::nullopt;
}

Relation cayley_from_unitary(const Matrix& w, const TolerancePolicy& tol) {
  const Index n = w.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix gens(2 * n, n);
  gens << id - w, Complex(0, 1) * (id + w);
  return from_generators(gens, tol);
}

Relation cayley_selfadjoint(Index n, std::uint64_t seed, const TolerancePolicy& tol, Index mv_dim,
                            Index null_dim) {
  if (n < 1) throw DimensionError("cayley relation needs n >= 1");
  if (mv_dim < 0 || null_dim < 0 || mv_dim + null_dim > n) {
    throw DimensionError("mv_dim + null_dim must not exceed n");
  }
  Rng rng(seed);
  const Matrix v = random_unitary(n, rng);
  if (mv_dim == 0 && null_dim == 0) return cayley_from_unitary(v, tol);
  Vector phases(n);
  for (Index j = 0; j < n; ++j) {
    if (j < mv_dim) {
      phases(j) = 1.0;
    } else if (j < mv_dim + null_dim) {
      phases(j) = -1.0;
    } else {
      // theta in [0.1, pi - 0.1] or [pi + 0.1, 2 pi - 0.1]
      double theta = rng.uniform(0.1, std::numbers::pi - 0.1);
      if (rng.uniform() < 0.5) theta += std::numbers::pi;
      phases(j) = std::polar(1.0, theta);
    }
  }
  return cayley_from_unitary(v * phases.asDiagonal() * v.adjoint(), tol);
}

Relation hermitian_restriction(const Relation& t_sa, Index m, std::uint64_t seed,
                               const TolerancePolicy& tol) {
  if (m < 0 || m > t_sa.dim()) {
    throw DimensionError("restriction dimension " + std::to_string(m) + " outside [0, " +
                         std::to_string(t_sa.dim()) + "]");
  }
  if (!is_hermitian(t_sa, tol)) throw HypothesisError("restriction parent is not Hermitian");
  if (m == t_sa.dim()) return t_sa;
  Rng rng(seed);
  const Frame coeffs = orthonormalize(gaussian_matrix(t_sa.dim(), m, rng), tol);
  return Relation(adopt_orthonormal(t_sa.graph().basis() * coeffs.basis()));
}

Relation random_symmetric_operator(Index n, double scale, std::uint64_t seed,
                                   const TolerancePolicy& tol) {
  Rng rng(seed);
  const Matrix g = gaussian_matrix(n, n, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  const double norm = spectral_norm(h);
  if (norm > 0.0) h *= scale / norm;
  return from_operator(h, std::nullopt, tol);
}

namespace {

// D plus `extra` random directions drawn from `ambient_allowed`.
Frame widen(const Frame& d, const Frame& ambient_allowed, Index extra, Rng& rng,
            const TolerancePolicy& tol) {
  if (extra <= 0) return d;
  const Frame room = intersect(complement(d), ambient_allowed, tol);
  if (room.empty()) return d;
  const Index k = std::min(extra, room.rank());
  const Matrix pick = room.basis() * orthonormalize(gaussian_matrix(room.rank(), k, rng), tol).basis();
  Matrix gens(d.ambient_dim(), d.rank() + pick.cols());
  gens << d.basis(), pick;
  return orthonormalize(gens, tol);
}

Matrix random_hermitian(Index n, double scale, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  const double norm = spectral_norm(h);
  if (norm > 0.0) h *= scale / norm;
  return h;
}

}  // namespace

Relation perturbation_pair(const Relation& t, PairProfile profile, double param,
                           std::uint64_t seed, const TolerancePolicy& tol) {
  const Index n = t.n();
  Rng rng(seed);
  switch (profile) {
    case PairProfile::zero:
      return scalar_mul(0.0, t, tol);
    case PairProfile::multiple:
      return scalar_mul(param, t, tol);
    case PairProfile::bounded_random: {
      const Frame dom = domain_of(t, tol);
      const Index room = n - dom.rank();
      const Index extra = room > 0 ? static_cast<Index>(rng.next_u64() % (room + 1)) : 0;
      const Frame e = widen(dom, Frame::full(n), extra, rng, tol);
      return from_operator(random_hermitian(n, param, rng), e, tol);
    }
    case PairProfile::mv_matching_random: {
      const Parts p = parts(t, tol);
      Frame m(n);
      if (!p.mv.empty()) {
        const Index k = 1 + static_cast<Index>(rng.next_u64() % p.mv.rank());
        m = adopt_orthonormal(p.mv.basis() *
                              orthonormalize(gaussian_matrix(p.mv.rank(), k, rng), tol).basis());
      }
      const Frame m_perp = complement(m);
      const Index room = m_perp.rank() - p.domain.rank();
      const Index extra = room > 0 ? static_cast<Index>(rng.next_u64() % (room + 1)) : 0;
      const Frame e = widen(p.domain, m_perp, extra, rng, tol);
      const Matrix proj = m_perp.projector();
      const Matrix h = proj * random_hermitian(n, param, rng) * proj;
      Matrix gens = Matrix::Zero(2 * n, e.rank() + m.rank());
      gens.topLeftCorner(n, e.rank()) = e.basis();
      gens.bottomLeftCorner(n, e.rank()) = h * e.basis();
      gens.bottomRightCorner(n, m.rank()) = m.basis();
      return from_generators(gens, tol);
    }
    case PairProfile::full_random:
      return from_operator(random_hermitian(n, param, rng), std::nullopt, tol);
  }
  throw std::invalid_argument("unknown pair profile");
}

Relation jacobi_relation(Index n, std::span<const double> diag, std::span<const double> offdiag,
                         bool restrict_ends, const TolerancePolicy& tol) {
  if (n < 1) throw DimensionError("jacobi relation needs n >= 1");
  if (static_cast<Index>(diag.size()) != n || static_cast<Index>(offdiag.size()) != n - 1) {
    throw DimensionError("jacobi coefficients need lengths n and n-1 (got " +
                         std::to_string(diag.size()) + " and " + std::to_string(offdiag.size()) +
                         " for n=" + std::to_string(n) + ")");
  }
  Matrix j = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) j(i, i) = diag[static_cast<std::size_t>(i)];
  for (Index i = 0; i + 1 < n; ++i) {
    j(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
    j(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
  }
  if (!restrict_ends) return from_operator(j, std::nullopt, tol);
  const Index inner = std::max<Index>(0, n - 2);
  Matrix d = Matrix::Zero(n, inner);
  for (Index i = 0; i < inner; ++i) d(i + 1, i) = 1.0;
  return from_operator(j, adopt_orthonormal(d), tol);
}

namespace {

Relation parent_of(const CorpusSpec& spec, const TolerancePolicy& tol) {
  Relation parent = cayley_selfadjoint(spec.n, derive_seed(spec.seed, 1), tol, spec.mv_dim,
                                       spec.null_dim);
  if (spec.graph_dim) parent = hermitian_restriction(parent, *spec.graph_dim, derive_seed(spec.seed, 2), tol);
  return parent;
}

}  // namespace

Generated generate(const CorpusSpec& spec, const TolerancePolicy& tol) {
  switch (spec.kind) {
    case CorpusKind::cayley:
      return {cayley_selfadjoint(spec.n, spec.seed, tol, spec.mv_dim, spec.null_dim), std::nullopt};
    case CorpusKind::restriction: {
      const Relation parent = cayley_selfadjoint(spec.n, derive_seed(spec.seed, 1), tol,
                                                 spec.mv_dim, spec.null_dim);
      const Index m = spec.graph_dim.value_or(parent.dim());
      return {hermitian_restriction(parent, m, derive_seed(spec.seed, 2), tol), std::nullopt};
    }
    case CorpusKind::pair: {
      Relation t = parent_of(spec, tol);
      Relation s = perturbation_pair(t, spec.profile, spec.param, derive_seed(spec.seed, 3), tol);
      return {std::move(t), std::move(s)};
    }
    case CorpusKind::jacobi:
      return {jacobi_relation(spec.n, spec.diag, spec.offdiag, spec.restrict_ends, tol),
              std::nullopt};
  }
  throw std::invalid_argument("unknown corpus kind");
}

std::vector<Index> default_sizes() { return {1, 2, 3, 4, 8, 16}; }

namespace {

std::uint64_t item_seed(std::uint64_t seed, Index n, int shape, int replica) {
  return derive_seed(seed, static_cast<std::uint64_t>((n * 64 + shape) * 1024 + replica));
}

CorpusItem make_item(std::string name, CorpusSpec spec, bool selfadjoint,
                     const TolerancePolicy& tol) {
  Generated g = generate(spec, tol);
  return CorpusItem{std::move(name), std::move(spec), std::move(g.relation), std::move(g.partner),
                    selfadjoint};
}

std::string tag(std::string_view shape, Index n, int replica) {
  return std::string(shape) + "-n" + std::to_string(n) + "-r" + std::to_string(replica);
}

}  // namespace

std::vector<CorpusItem> relation_suite(std::uint64_t seed, const std::vector<Index>& sizes,
                                       int replicas, const TolerancePolicy& tol) {
  std::vector<CorpusItem> out;
  for (Index n : sizes) {
    const Index q = std::max<Index>(1, n / 4);
    for (int r = 0; r < replicas; ++r) {
      auto spec = [&](CorpusKind kind, int shape) {
        CorpusSpec s;
        s.kind = kind;
        s.n = n;
        s.seed = item_seed(seed, n, shape, r);
        return s;
      };
      out.push_back(make_item(tag("cayley", n, r), spec(CorpusKind::cayley, 0), true, tol));
      {
        CorpusSpec s = spec(CorpusKind::cayley, 1);
        s.mv_dim = q;
        out.push_back(make_item(tag("cayley-mv", n, r), s, true, tol));
      }
      {
        CorpusSpec s = spec(CorpusKind::cayley, 2);
        s.null_dim = q;
        out.push_back(make_item(tag("cayley-null", n, r), s, true, tol));
      }
      if (n >= 2) {
        CorpusSpec s = spec(CorpusKind::cayley, 3);
        s.mv_dim = 1;
        s.null_dim = 1;
        out.push_back(make_item(tag("cayley-mixed", n, r), s, true, tol));
      }
      {
        CorpusSpec s = spec(CorpusKind::restriction, 4);
        s.mv_dim = q;
        s.graph_dim = n / 2;
        out.push_back(make_item(tag("restriction-half", n, r), s, false, tol));
      }
      if (n >= 2) {
        CorpusSpec s = spec(CorpusKind::restriction, 5);
        s.mv_dim = 1;
        s.null_dim = n >= 3 ? 1 : 0;
        s.graph_dim = n - 1;
        out.push_back(make_item(tag("restriction-deep", n, r), s, false, tol));
      }
      {
        CorpusSpec s = spec(CorpusKind::jacobi, 6);
        Rng rng(s.seed);
        for (Index i = 0; i < n; ++i) s.diag.push_back(rng.uniform(-2.0, 2.0));
        for (Index i = 0; i + 1 < n; ++i) s.offdiag.push_back(rng.uniform(0.5, 1.5));
        out.push_back(make_item(tag("jacobi", n, r), s, true, tol));
        if (n >= 3) {
          s.restrict_ends = true;
          out.push_back(make_item(tag("jacobi-ends", n, r), s, false, tol));
        }
      }
    }
  }
  return out;
}

std::vector<CorpusItem> pair_suite(std::uint64_t seed, const std::vector<Index>& sizes,
                                   int replicas, const TolerancePolicy& tol) {
  struct Profile {
    const char* name;
    PairProfile profile;
    double param;
  };
  const Profile profiles[] = {
      {"zero", PairProfile::zero, 0.0},
      {"third", PairProfile::multiple, 1.0 / 3.0},
      {"negative-half", PairProfile::multiple, -0.5},
      {"bounded", PairProfile::bounded_random, 0.5},
      {"mv-matching", PairProfile::mv_matching_random, 0.5},
  };
  std::vector<CorpusItem> out;
  for (Index n : sizes) {
    const Index q = std::max<Index>(1, n / 4);
    for (int r = 0; r < replicas; ++r) {
      int shape = 16;
      for (const Profile& p : profiles) {
        for (bool restricted : {false, true}) {
          CorpusSpec s;
          s.kind = CorpusKind::pair;
          s.n = n;
          s.seed = item_seed(seed, n, shape++, r);
          s.mv_dim = q;
          s.null_dim = n >= 3 ? 1 : 0;
          if (restricted) s.graph_dim = n / 2 + (n > 2 ? 1 : 0);
          s.profile = p.profile;
          s.param = p.param;
          const std::string name = std::string("pair-") + p.name + (restricted ? "-restricted" : "") +
                                   "-n" + std::to_string(n) + "-r" + std::to_string(r);
          out.push_back(make_item(name, s, !restricted, tol));
        }
      }
      // Operator T (no multivalued part) with a positive multiple: accretive.
      {
        CorpusSpec s;
        s.kind = CorpusKind::pair;
        s.n = n;
        s.seed = item_seed(seed, n, shape++, r);
        s.profile = PairProfile::multiple;
        s.param = 0.25;
        out.push_back(make_item("pair-accretive-n" + std::to_string(n) + "-r" + std::to_string(r),
                                s, true, tol));
      }
      // Everywhere defined symmetric S against a relation with a multivalued part.
      for (bool restricted : {false, true}) {
        CorpusSpec s;
        s.kind = CorpusKind::pair;
        s.n = n;
        s.seed = item_seed(seed, n, shape++, r);
        s.mv_dim = q;
        if (restricted) s.graph_dim = n / 2;
        s.profile = PairProfile::full_random;
        s.param = 0.75;
        out.push_back(make_item(std::string("pair-symmetric-op") + (restricted ? "-restricted" : "") +
                                    "-n" + std::to_string(n) + "-r" + std::to_string(r),
                                s, !restricted, tol));
      }
    }
  }
  return out;
}

}  // namespace relcalc
