#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relcalc/relation.hpp"

namespace relcalc {

enum class BoundVariant {
  linear,     ///< ||S(x)|| <= a ||x|| + b ||T(x)||
  quadratic,  ///< ||S(x)||^2 <= a^2 ||x||^2 + b^2 ||T(x)||^2
};

/// Explicit relative-bound constants for S against T on D(T).
struct RelBoundCertificate {
  double a = 0.0;
  double b = 0.0;
  BoundVariant variant = BoundVariant::linear;
  std::string context;
};

struct InclusionReport {
  bool dom_ok = false;        ///< D(T) in D(S)
  bool mv_ok = false;         ///< S(0) in T(0)
  bool null_ok = false;       ///< N(T) in N(S)
  bool recompose_ok = false;  ///< (T - S) + S == T

  /// (T - S) + S == T must coincide with dom_ok && mv_ok.
  bool consistent() const { return recompose_ok == (dom_ok && mv_ok); }
};

InclusionReport inclusion_report(const Relation& t, const Relation& s, const TolerancePolicy& tol);

/// Gram forms of ||T(x)||^2 and ||S(x)||^2 in coordinates of an orthonormal
/// basis of D(T): for x = D c, ||T(x)||^2 = c^H g_t c and ||S(x)||^2 = c^H g_s c.
struct RestrictedGrams {
  Frame domain;
  Matrix g_t;
  Matrix g_s;
};

/// Requires D(T) in D(S) (HypothesisError otherwise).
RestrictedGrams restricted_grams(const Relation& t, const Relation& s, const TolerancePolicy& tol);

/// Smallest a' with ||S(x)||^2 <= a'^2 ||x||^2 + b'^2 ||T(x)||^2.
double minimal_a(const RestrictedGrams& g, double b_prime);

struct FrontierPoint {
  double b = 0.0;
  double a = 0.0;
};

std::vector<FrontierPoint> quadratic_frontier(const Relation& t, const Relation& s,
                                              const std::vector<double>& b_grid,
                                              const TolerancePolicy& tol);

/// Linear -> quadratic conversion: a'^2 = (1 + 1/eps) a^2, b'^2 = (1 + eps) b^2.
RelBoundCertificate to_quadratic(const RelBoundCertificate& linear, double eps);
/// Quadratic -> linear conversion with a = a', b = b'.
RelBoundCertificate to_linear(const RelBoundCertificate& quadratic);

/// 25 log-spaced values from 1e-3 to 1e3.
std::vector<double> epsilon_grid();

enum class BoundStatus { holds, fails };

struct CertifyResult {
  BoundStatus status = BoundStatus::fails;
  /// Largest residual seen: for the quadratic variant the top eigenvalue of
  /// g_s - b^2 g_t - a^2 I, for the linear variant the largest value of
  /// ||S(x)|| - a - b ||T(x)|| over the unit vectors examined.
  double worst_residual = 0.0;
  std::string path;               ///< which argument settled the verdict
  std::optional<Vector> witness;  ///< unit x in D(T) violating the bound (set iff fails)

  bool holds() const { return status == BoundStatus::holds; }
};

/// Decides whether `cert` bounds S relative to T.
///
/// Quadratic certificates are decided exactly by an eigenvalue test. A linear
/// certificate (a, b) holds iff the converted quadratic certificate holds for
/// every eps > 0, so it is proved directly when the quadratic (a, b) form holds,
/// refuted by the first eps on the grid (or on a wider search grid) whose
/// conversion fails, and cross-checked by `samples` random unit vectors of D(T).
/// A failing verdict always carries a witness with positive residual.
CertifyResult certify_bound(const Relation& t, const Relation& s, const RelBoundCertificate& cert,
                            int samples, std::uint64_t seed, const TolerancePolicy& tol);

/// (a, b) -> (a / (1 - b), b / (1 - b)): a bound of S against T with b < 1
/// becomes a bound of S against T + tS for every t in [0, 1].
/// Throws TransformError for b >= 1 and std::invalid_argument for t outside [0, 1].
RelBoundCertificate shift_certificate(const RelBoundCertificate& cert, double t);

struct ProjectorFamilyPoint {
  Complex k;
  double gap = 0.0;      ///< ||P_k - P_0||
  double bound = 0.0;    ///< 2 c |k|
  bool in_range = false; ///< |k| <= 1 / (2c), where gap <= bound is guaranteed
};

struct ProjectorFamily {
  bool dom_ok = false;            ///< D(A) in D(B)
  bool mv_ok = false;             ///< B(0) in A(0)
  bool bound_ok = false;          ///< ||B(x)|| <= c ||A(x)|| on D(A)
  double bound_residual = 0.0;    ///< top eigenvalue of g_B - c^2 g_A
  std::vector<ProjectorFamilyPoint> points;  ///< empty unless all preconditions hold

  bool preconditions_ok() const { return dom_ok && mv_ok && bound_ok; }
};

/// Gaps between the range projectors of A + kB and of A over `k_grid`.
ProjectorFamily projector_family(const Relation& a, const Relation& b, double c,
                                 const std::vector<Complex>& k_grid, const TolerancePolicy& tol);

struct HomotopyPoint {
  double t = 0.0;
  Index rank_plus = 0;   ///< dim R(T + tS - iI)^perp
  Index rank_minus = 0;  ///< dim R(T + tS + iI)^perp
  double gap_plus = 0.0;   ///< projector gap to the previous grid point
  double gap_minus = 0.0;
  double cert_a = 0.0;   ///< quadratic bound of S against T + tS with b = 1
  double cert_b = 1.0;
  Complex z_proof;       ///< i * cert_a / cert_b
  int depth = 0;
};

struct HomotopyTrace {
  std::vector<HomotopyPoint> points;
  bool converged = false;  ///< every consecutive gap fell below the threshold
  bool rank_constant_plus = false;
  bool rank_constant_minus = false;

  bool rank_constant() const { return rank_constant_plus && rank_constant_minus; }
};

struct HomotopyOptions {
  double refine_threshold = 0.9;
  int max_depth = 20;
};

/// Tracks the deficiency projectors of T + tS for t in [0, 1], bisecting any
/// interval whose projector gap reaches the threshold.
/// Throws HypothesisError unless T, S are Hermitian, D(T) in D(S) and S(0) in T(0).
HomotopyTrace homotopy_sweep(const Relation& t, const Relation& s, int initial_grid,
                             const TolerancePolicy& tol, const HomotopyOptions& opts = {});

struct StInverse {
  Relation product;  ///< S T^{-1}
  bool is_operator = false;
  double norm = 0.0;
  /// N(T) in N(S) and S single-valued, which forces is_operator.
  bool guaranteed_operator = false;
};

StInverse st_inverse_analysis(const Relation& t, const Relation& s, const TolerancePolicy& tol);

/// Minimum of Re<f, g> over unit vectors (x, f, g) with (x, f) in T and (x, g) in S.
/// The multivalued components take part in the minimization.
double accretivity_margin(const Relation& t, const Relation& s, const TolerancePolicy& tol);

enum class InvarianceMode {
  homotopy_bounded,        ///< thm31
  bound_below_one,         ///< cor31
  selfadjointness,         ///< cor32
  st_inverse_contraction,  ///< cor33
  accretive,               ///< cor35
  symmetric_difference,    ///< cor36
  essential_selfadjoint,   ///< cor37
  unit_bound_sum_bounded,  ///< cor38
  unit_bound,              ///< thm32
};

std::string_view mode_token(InvarianceMode mode);
std::optional<InvarianceMode> parse_mode(std::string_view token);
std::vector<InvarianceMode> all_modes();

struct IndexPair {
  Index plus = 0;
  Index minus = 0;
  bool operator==(const IndexPair&) const = default;
};

IndexPair indices_at_i(const Relation& t, const TolerancePolicy& tol);

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

enum class VerdictStatus { pass, fail, skip };

struct InvarianceVerdict {
  InvarianceMode mode{};
  std::vector<Clause> hypotheses;
  bool hypotheses_ok = false;
  IndexPair base;                   ///< d_+-(T)
  IndexPair perturbed;              ///< d_+-(T + S), or d_+-(V) for symmetric_difference
  std::string conclusion;
  bool conclusion_holds = false;
  VerdictStatus status = VerdictStatus::skip;
  std::vector<std::string> notes;
};

struct InvarianceOptions {
  /// Explicit bound of S against T; defaults to (||S restricted to D(T)||, 0)
  /// for the b < 1 modes and to the b = 1 frontier point for the unit-bound modes.
  std::optional<RelBoundCertificate> certificate;
  int t_grid = 11;
  int samples = 2000;
  std::uint64_t seed = 1;
};

/// Checks the hypotheses of the selected invariance statement mechanically and,
/// when they hold, its conclusion. Failed hypotheses give a skip verdict.
InvarianceVerdict invariance_report(const Relation& t, const Relation& s_or_v,
                                    InvarianceMode mode, const TolerancePolicy& tol,
                                    const InvarianceOptions& opts = {});

std::string_view status_token(VerdictStatus s);

}  // namespace relcalc
