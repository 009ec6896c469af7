#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relcalc/relation.hpp"

namespace relcalc {

enum class CorpusKind { cayley, restriction, pair, jacobi };
enum class PairProfile { zero, multiple, bounded_random, mv_matching_random, full_random };

std::string_view kind_token(CorpusKind k);
std::optional<CorpusKind> parse_kind(std::string_view s);
std::string_view profile_token(PairProfile p);
std::optional<PairProfile> parse_profile(std::string_view s);

/// Everything needed to regenerate a corpus relation bit-for-bit.
struct CorpusSpec {
  CorpusKind kind = CorpusKind::cayley;
  Index n = 1;
  std::uint64_t seed = 0;

  // cayley / restriction / pair: shape of the self-adjoint parent
  Index mv_dim = 0;    ///< forced eigenvalue +1 of the unitary (multivalued directions)
  Index null_dim = 0;  ///< forced eigenvalue -1 of the unitary (null directions)
  // restriction / pair: dimension of the Hermitian restriction (nullopt keeps the parent)
  std::optional<Index> graph_dim;
  // pair
  PairProfile profile = PairProfile::zero;
  double param = 1.0;  ///< kappa for `multiple`, operator scale otherwise
  // jacobi
  std::vector<double> diag;
  std::vector<double> offdiag;
  bool restrict_ends = false;

  bool operator==(const CorpusSpec&) const = default;
};

/// Self-adjoint relation {((I - W)v, i(I + W)v)} for a unitary W.
Relation cayley_from_unitary(const Matrix& w, const TolerancePolicy& tol);

/// Cayley relation of a seeded unitary. With mv_dim = null_dim = 0 the unitary
/// is Haar-random; otherwise it is V diag(1.., -1.., e^{i theta}..) V^H with the
/// remaining phases kept at least 0.1 away from +-1.
Relation cayley_selfadjoint(Index n, std::uint64_t seed, const TolerancePolicy& tol,
                            Index mv_dim = 0, Index null_dim = 0);

/// Restriction of a self-adjoint relation to a seeded random m-dimensional
/// subspace of its graph (Hermitian, with d+- = n - m).
Relation hermitian_restriction(const Relation& t_sa, Index m, std::uint64_t seed,
                               const TolerancePolicy& tol);

/// Hermitian S with D(T) in D(S) and S(0) in T(0). `param` is kappa for
/// `multiple` and the spectral scale of the random operator otherwise.
/// `full_random` is a Hermitian operator defined on all of C^n.
Relation perturbation_pair(const Relation& t, PairProfile profile, double param,
                           std::uint64_t seed, const TolerancePolicy& tol);

/// Densely defined Hermitian operator with spectral norm `scale`.
Relation random_symmetric_operator(Index n, double scale, std::uint64_t seed,
                                   const TolerancePolicy& tol);

/// Graph of the real symmetric tridiagonal matrix; with `restrict_ends` the
/// domain is cut down to vectors vanishing at both end points.
Relation jacobi_relation(Index n, std::span<const double> diag, std::span<const double> offdiag,
                         bool restrict_ends, const TolerancePolicy& tol);

struct Generated {
  Relation relation;
  std::optional<Relation> partner;  ///< S for pair specs
};

Generated generate(const CorpusSpec& spec, const TolerancePolicy& tol);

struct CorpusItem {
  std::string name;
  CorpusSpec spec;
  Relation t;
  std::optional<Relation> s;
  bool selfadjoint = false;  ///< advertised class of t (always at least Hermitian)
};

/// Sizes covered by the default suites.
std::vector<Index> default_sizes();

/// Hermitian relations over `sizes`, `replicas` seeded copies of each shape.
std::vector<CorpusItem> relation_suite(std::uint64_t seed, const std::vector<Index>& sizes,
                                       int replicas, const TolerancePolicy& tol);

/// Perturbation pairs (T, S) satisfying D(T) in D(S), S(0) in T(0), both Hermitian.
std::vector<CorpusItem> pair_suite(std::uint64_t seed, const std::vector<Index>& sizes,
                                   int replicas, const TolerancePolicy& tol);

}  // namespace relcalc
