#include "relcalc/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "relcalc/deficiency.hpp"
#include "relcalc/perturbation.hpp"
#include "relcalc/quotient.hpp"

namespace relcalc {

void Report::add(std::string name, std::string anchor, bool ok, Json witness) {
  checks.push_back({std::move(name), std::move(anchor), ok ? CheckStatus::pass : CheckStatus::fail, 1,
                    ok ? Json() : std::move(witness)});
}

int Report::exit_code() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return exit_check_failed;
  }
  return exit_pass;
}

Json Report::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back(check_to_json(c));
  return Json{{"tool", "relcalc"},
              {"command", command},
              {"tolerance",
               {{"rank_rtol", tolerance.rank_rtol},
                {"cmp_atol", tolerance.cmp_atol},
                {"containment_tol", tolerance.containment_tol}}},
              {"seed", seed},
              {"checks", cs},
              {"result", result},
              {"status", exit_code() == exit_pass ? "pass" : "fail"}};
}

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RELCALC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("RELCALC_SEED", std::string("not an unsigned integer: ") + env);
    }
  }
  return 1;
}

Json parts_json(const Relation& t, const TolerancePolicy& tol) {
  const Parts p = parts(t, tol);
  return Json{{"domain", p.domain.rank()}, {"range", p.range.rank()}, {"null", p.null.rank()}, {"mv", p.mv.rank()}};
}

Json classification_json(const Classification& c) {
  return Json{{"operator", c.is_operator},
              {"densely_defined", c.is_densely_defined},
              {"hermitian", c.is_hermitian},
              {"selfadjoint", c.is_selfadjoint}};
}

double pairing_defect(const Relation& t, const Relation& u) {
  const Matrix m = u.f_block().adjoint() * t.x_block() - u.x_block().adjoint() * t.f_block();
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

void adjoint_checks(Report& r, const Relation& t, const Relation& ts) {
  const double defect = pairing_defect(t, ts);
  r.add("adjoint pairing identity", "<g, x> = <y, f> for (x, f) in T, (y, g) in T*",
        defect <= r.tolerance.cmp_atol, Json{{"defect", defect}});
  r.add("adjoint dimension", "dim T + dim T* = 2n", t.dim() + ts.dim() == 2 * t.n(),
        Json{{"dim", t.dim()}, {"adjoint_dim", ts.dim()}});
}

Json trace_json(const HomotopyTrace& tr) {
  Json pts = Json::array();
  for (const auto& p : tr.points) {
    pts.push_back(Json{{"t", p.t},
                       {"rank_plus", p.rank_plus},
                       {"rank_minus", p.rank_minus},
                       {"gap_plus", p.gap_plus},
                       {"gap_minus", p.gap_minus},
                       {"cert_a", p.cert_a},
                       {"cert_b", p.cert_b},
                       {"z", complex_to_json(p.z_proof)},
                       {"depth", p.depth}});
  }
  return Json{{"points", pts},
              {"converged", tr.converged},
              {"rank_constant", tr.rank_constant()},
              {"rank_constant_plus", tr.rank_constant_plus},
              {"rank_constant_minus", tr.rank_constant_minus}};
}

void summarize(const Report& r, std::ostream& err) {
  for (const auto& c : r.checks) {
    err << std::left << std::setw(5) << check_token(c.status) << ' ' << c.name;
    if (c.instances > 1) err << " (" << c.instances << ")";
    err << '\n';
  }
  err << r.command << ": " << (r.exit_code() == exit_pass ? "pass" : "FAIL") << " (" << r.checks.size()
      << " checks)\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for linear relations: parts, adjoints, deficiency indices and perturbations",
               "relcalc"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand: `verify --suite lemma29 --seed 7`.
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  TolerancePolicy tol;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--rank-rtol", tol.rank_rtol, "relative singular-value cutoff for rank decisions");
  app.add_option("--atol", tol.cmp_atol, "absolute tolerance for comparisons");
  app.add_option("--containment-tol", tol.containment_tol, "subspace containment tolerance");
  app.add_option("--seed", seed_flag, "seed (default: $RELCALC_SEED or 1)");

  std::string file_t, file_s, out_file, out_s_file;

  auto* analyze = app.add_subcommand("analyze", "parts, classification, norm and indices at +-i");
  analyze->add_option("file", file_t, "relation file")->required();

  auto* adj = app.add_subcommand("adjoint", "adjoint relation");
  adj->add_option("file", file_t, "relation file")->required();
  adj->add_option("--out", out_file, "write T* to this file");

  int samples = 10;
  auto* def = app.add_subcommand("deficiency", "deficiency indices of a Hermitian relation");
  def->add_option("file", file_t, "relation file")->required();
  def->add_option("--samples", samples, "random points per half-plane")->check(CLI::PositiveNumber);

  std::vector<double> b_grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
  auto* front = app.add_subcommand("frontier", "quadratic relative-bound frontier of S against T");
  front->add_option("file_t", file_t, "relation T")->required();
  front->add_option("file_s", file_s, "relation S")->required();
  front->add_option("--b-grid", b_grid, "values of b'")->check(CLI::NonNegativeNumber);

  int grid = 11;
  auto* homo = app.add_subcommand("homotopy", "deficiency ranks of T + tS for t in [0, 1]");
  homo->add_option("file_t", file_t, "relation T")->required();
  homo->add_option("file_s", file_s, "relation S")->required();
  homo->add_option("--grid", grid, "initial grid points")->check(CLI::Range(2, 100000));

  std::string mode_name;
  std::optional<double> cert_a, cert_b;
  std::string variant = "linear";
  auto* inv = app.add_subcommand("invariance", "check an index-invariance statement for (T, S)");
  inv->add_option("file_t", file_t, "relation T")->required();
  inv->add_option("file_s", file_s, "relation S (V for cor36)")->required();
  inv->add_option("--mode", mode_name, "thm31 cor31 cor32 cor33 cor35 cor36 cor37 cor38 thm32")->required();
  inv->add_option("--a", cert_a, "explicit certificate a");
  inv->add_option("--b", cert_b, "explicit certificate b");
  inv->add_option("--variant", variant, "linear or quadratic")->check(CLI::IsMember({"linear", "quadratic"}));

  auto* cert = app.add_subcommand("certify", "decide a relative bound of S against T");
  cert->add_option("file_t", file_t, "relation T")->required();
  cert->add_option("file_s", file_s, "relation S")->required();
  cert->add_option("--a", cert_a, "a")->required()->check(CLI::NonNegativeNumber);
  cert->add_option("--b", cert_b, "b")->required()->check(CLI::NonNegativeNumber);
  cert->add_option("--variant", variant, "linear or quadratic")->check(CLI::IsMember({"linear", "quadratic"}));
  cert->add_option("--samples", samples, "random unit vectors for falsification");

  std::string suite = "all";
  std::vector<Index> sizes = default_sizes();
  int replicas = 5, suite_samples = 20;
  auto* ver = app.add_subcommand("verify", "run a law suite over the seeded corpus");
  std::vector<std::string> suites = suite_names();
  ver->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
  ver->add_option("--sizes", sizes, "ambient dimensions")->check(CLI::Range(1, 512));
  ver->add_option("--replicas", replicas, "seeded copies of each corpus shape")->check(CLI::PositiveNumber);
  ver->add_option("--samples", suite_samples, "samples per corpus item")->check(CLI::PositiveNumber);

  CorpusSpec spec;
  std::string kind = "cayley", profile = "zero";
  std::optional<Index> graph_dim;
  auto* gen = app.add_subcommand("gen", "generate a corpus relation (and partner for pairs)");
  gen->add_option("--kind", kind, "cayley, restriction, pair or jacobi")
      ->check(CLI::IsMember({"cayley", "restriction", "pair", "jacobi"}));
  gen->add_option("--n", spec.n, "ambient dimension")->check(CLI::Range(1, 512));
  gen->add_option("--mv-dim", spec.mv_dim, "forced multivalued directions");
  gen->add_option("--null-dim", spec.null_dim, "forced null directions");
  gen->add_option("--graph-dim", graph_dim, "dimension of the Hermitian restriction");
  gen->add_option("--profile", profile, "zero, multiple, bounded-random, mv-matching-random, full-random");
  gen->add_option("--param", spec.param, "kappa for multiple, operator scale otherwise");
  gen->add_option("--diag", spec.diag, "jacobi diagonal");
  gen->add_option("--offdiag", spec.offdiag, "jacobi off-diagonal");
  gen->add_flag("--restrict-ends", spec.restrict_ends, "restrict jacobi domain away from the end points");
  gen->add_option("--out", out_file, "write T to this file");
  gen->add_option("--out-s", out_s_file, "write the partner S to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  Report r;
  try {
    app.parse(reversed);
    tol.validate();
    r.tolerance = tol;
    r.seed = seed_flag ? *seed_flag : default_seed();
    CLI::App* sub = app.get_subcommands().front();
    r.command = sub->get_name();

    if (sub == analyze) {
      const Relation t = read_relation_file(file_t, tol);
      const Classification c = classify(t, tol);
      const Relation ts = adjoint(t);
      const Parts p = parts(t, tol);
      r.result = Json{{"n", t.n()},
                      {"dim", t.dim()},
                      {"parts", parts_json(t, tol)},
                      {"classification", classification_json(c)},
                      {"norm", relation_norm(t, tol)},
                      {"adjoint_dim", ts.dim()},
                      {"d_plus_raw", deficiency_index(t, Complex(0, 1), tol)},
                      {"d_minus_raw", deficiency_index(t, Complex(0, -1), tol)}};
      r.add("rank-nullity", "dim T = dim D(T) + dim T(0) = dim R(T) + dim N(T)",
            t.dim() == p.domain.rank() + p.mv.rank() && t.dim() == p.range.rank() + p.null.rank());
      adjoint_checks(r, t, ts);
      if (c.is_hermitian) {
        r.add("domain orthogonal to multivalued part", "T Hermitian => D(T) orthogonal to T(0)",
              p.domain.empty() || p.mv.empty() ||
                  (p.domain.basis().adjoint() * p.mv.basis()).cwiseAbs().maxCoeff() <= tol.cmp_atol);
      }
    } else if (sub == adj) {
      const Relation t = read_relation_file(file_t, tol);
      const Relation ts = adjoint(t);
      r.result = Json{{"adjoint", relation_to_json(ts)}, {"parts", parts_json(ts, tol)}};
      adjoint_checks(r, t, ts);
      r.add("involution", "T** = T", same_relation(adjoint(ts), t, tol));
      if (!out_file.empty()) write_relation_file(out_file, ts);
    } else if (sub == def) {
      const Relation t = read_relation_file(file_t, tol);
      if (!is_hermitian(t, tol)) {
        r.add("T Hermitian", "indices are only claimed constant for Hermitian relations", false,
              Json{{"detail", "relation is not Hermitian; raw indices at +-i reported instead"}});
        const auto prof = deficiency_profile(t, {Complex(0, 1), Complex(0, -1)}, tol);
        r.result = Json{{"d_plus_raw", prof[0].index}, {"d_minus_raw", prof[1].index}};
      } else {
        const DeficiencyReport d = deficiency_indices(t, samples, r.seed, tol);
        Json pts = Json::array();
        for (const auto& s : d.samples) pts.push_back(Json{{"lambda", complex_to_json(s.lambda)}, {"index", s.index}});
        r.result = Json{{"d_plus", d.d_plus}, {"d_minus", d.d_minus}, {"constancy_ok", d.constancy_ok}, {"samples", pts}};
        r.add("T Hermitian", "indices are only claimed constant for Hermitian relations", true);
        r.add("half-plane constancy", "d_lambda constant on each open half-plane", d.constancy_ok);
        const Index expected = t.n() - t.dim();
        r.add("finite-dimension identity", "d+ = d- = n - dim T",
              d.d_plus == expected && d.d_minus == expected, Json{{"expected", expected}});
      }
    } else if (sub == front) {
      const Relation t = read_relation_file(file_t, tol);
      const Relation s = read_relation_file(file_s, tol);
      require_same_n(t, s, "frontier");
      const InclusionReport inc = inclusion_report(t, s, tol);
      r.add("D(T) in D(S)", "the frontier is defined on D(T)", inc.dom_ok);
      if (inc.dom_ok) {
        std::sort(b_grid.begin(), b_grid.end());
        const auto pts = quadratic_frontier(t, s, b_grid, tol);
        Json arr = Json::array();
        bool mono = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          arr.push_back(Json{{"b", pts[i].b}, {"a", pts[i].a}});
          if (i > 0) mono = mono && pts[i].a <= pts[i - 1].a + tol.cmp_atol;
        }
        r.result = Json{{"points", arr}, {"variant", "quadratic"}};
        r.add("frontier nonincreasing", "a'(b') is nonincreasing in b'", mono);
      }
    } else if (sub == homo) {
      const Relation t = read_relation_file(file_t, tol);
      const Relation s = read_relation_file(file_s, tol);
      require_same_n(t, s, "homotopy");
      const HomotopyTrace tr = homotopy_sweep(t, s, grid, tol);
      r.result = trace_json(tr);
      r.add("refinement converged", "consecutive projector gaps below 0.9", tr.converged);
      r.add("rank constant", "deficiency ranks of T + tS constant on [0, 1]", tr.rank_constant(),
            Json{{"plus", tr.rank_constant_plus}, {"minus", tr.rank_constant_minus}});
      const IndexPair a = indices_at_i(t, tol);
      const IndexPair b = indices_at_i(op_sum(t, s, tol), tol);
      r.add("endpoints", "trace endpoints equal d(T) and d(T+S)",
            tr.points.front().rank_plus == a.plus && tr.points.front().rank_minus == a.minus &&
                tr.points.back().rank_plus == b.plus && tr.points.back().rank_minus == b.minus);
    } else if (sub == inv) {
      const Relation t = read_relation_file(file_t, tol);
      const Relation s = read_relation_file(file_s, tol);
      const auto mode = parse_mode(mode_name);
      if (!mode) throw CLI::ValidationError("--mode", "unknown mode " + mode_name);
      InvarianceOptions opts;
      opts.seed = r.seed;
      if (cert_a || cert_b) {
        if (!(cert_a && cert_b)) throw CLI::ValidationError("--a/--b", "give both or neither");
        opts.certificate = RelBoundCertificate{*cert_a, *cert_b,
                                               variant == "linear" ? BoundVariant::linear : BoundVariant::quadratic,
                                               file_t + " vs " + file_s};
      }
      const InvarianceVerdict v = invariance_report(t, s, *mode, tol, opts);
      Json hyps = Json::array();
      for (const auto& c : v.hypotheses) {
        hyps.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        r.checks.push_back({"hypothesis: " + c.name, std::string(mode_token(*mode)),
                            c.ok ? CheckStatus::pass : CheckStatus::skip, 1, nullptr});
      }
      r.result = Json{{"mode", mode_token(*mode)},
                      {"hypotheses", hyps},
                      {"hypotheses_ok", v.hypotheses_ok},
                      {"base", {v.base.plus, v.base.minus}},
                      {"perturbed", {v.perturbed.plus, v.perturbed.minus}},
                      {"conclusion", v.conclusion},
                      {"status", status_token(v.status)},
                      {"notes", v.notes}};
      if (v.status != VerdictStatus::skip) {
        r.add("conclusion", v.conclusion, v.conclusion_holds, Json{{"conclusion", v.conclusion}});
      }
    } else if (sub == cert) {
      const Relation t = read_relation_file(file_t, tol);
      const Relation s = read_relation_file(file_s, tol);
      const RelBoundCertificate c{*cert_a, *cert_b,
                                  variant == "linear" ? BoundVariant::linear : BoundVariant::quadratic,
                                  file_t + " vs " + file_s};
      const InclusionReport inc = inclusion_report(t, s, tol);
      r.add("D(T) in D(S)", "bounds are stated on D(T)", inc.dom_ok);
      if (inc.dom_ok) {
        const CertifyResult cr = certify_bound(t, s, c, samples, r.seed, tol);
        r.result = Json{{"holds", cr.holds()}, {"worst_residual", cr.worst_residual}, {"path", cr.path}};
        r.add("bound holds", variant == "linear" ? "||S(x)|| <= a||x|| + b||T(x)||"
                                                 : "||S(x)||^2 <= a^2||x||^2 + b^2||T(x)||^2",
              cr.holds(),
              Json{{"x", cr.witness ? vector_to_json(*cr.witness) : Json()}, {"residual", cr.worst_residual}});
      }
    } else if (sub == ver) {
      SuiteOptions opts;
      opts.seed = r.seed;
      opts.sizes = sizes;
      opts.replicas = replicas;
      opts.samples = suite_samples;
      r.checks = run_suite(suite, opts, tol);
      int instances = 0;
      for (const auto& c : r.checks) instances += c.instances;
      r.result = Json{{"suite", suite}, {"sizes", sizes}, {"replicas", replicas}, {"instances", instances}};
      r.command = "verify --suite " + suite;
    } else if (sub == gen) {
      spec.kind = *parse_kind(kind);
      const auto p = parse_profile(profile);
      if (!p) throw CLI::ValidationError("--profile", "unknown profile " + profile);
      spec.profile = *p;
      spec.graph_dim = graph_dim;
      spec.seed = r.seed;
      const Generated g = generate(spec, tol);
      r.result = Json{{"spec", spec_to_json(spec)}, {"relation", relation_to_json(g.relation)}};
      r.add("T Hermitian", "corpus relations are Hermitian by construction", is_hermitian(g.relation, tol));
      if (g.partner) {
        r.result["partner"] = relation_to_json(*g.partner);
        const InclusionReport inc = inclusion_report(g.relation, *g.partner, tol);
        r.add("pair hypotheses", "S Hermitian, D(T) in D(S), S(0) in T(0)",
              is_hermitian(*g.partner, tol) && inc.dom_ok && inc.mv_ok);
      }
      if (!out_file.empty()) write_relation_file(out_file, g.relation);
      if (!out_s_file.empty()) {
        if (!g.partner) throw CLI::ValidationError("--out-s", "only pair specs have a partner");
        write_relation_file(out_s_file, *g.partner);
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    out << Json{{"tool", "relcalc"}, {"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2) << '\n';
    return exit_usage;
  } catch (const IoError& e) {
    err << "error (" << io_error_token(e.kind()) << "): " << e.what() << '\n';
    out << Json{{"tool", "relcalc"},
                {"error", {{"kind", io_error_token(e.kind())}, {"field", e.field()}, {"message", e.detail()}}}}
                   .dump(2)
        << '\n';
    return exit_usage;
  } catch (const Error& e) {
    // Dimension mismatches between files, unusable hypotheses, bad tolerances.
    err << "error: " << e.what() << '\n';
    out << Json{{"tool", "relcalc"}, {"error", {{"kind", "input"}, {"message", e.what()}}}}.dump(2) << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    out << Json{{"tool", "relcalc"}, {"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2) << '\n';
    return exit_usage;
  }
  out << r.to_json().dump(2) << '\n';
  summarize(r, err);
  return r.exit_code();
}

}  // namespace relcalc
