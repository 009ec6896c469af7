#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relcalc/cli.hpp"
#include "relcalc/corpus.hpp"
#include "relcalc/deficiency.hpp"
#include "relcalc/io.hpp"
#include "relcalc/perturbation.hpp"
#include "relcalc/quotient.hpp"
#include "relcalc/verify.hpp"

namespace py = pybind11;
using namespace relcalc;
using namespace pybind11::literals;

namespace {

const TolerancePolicy kDefaultTol{};

// Everything structured crosses the boundary as JSON text; the Python side
// turns it into dicts.
std::string dump(const Json& j) { return j.dump(); }

Json parts_doc(const Parts& p) {
  return Json{{"domain", p.domain.rank()}, {"range", p.range.rank()}, {"null", p.null.rank()}, {"mv", p.mv.rank()}};
}

BoundVariant parse_variant(const std::string& v) {
  if (v == "linear") return BoundVariant::linear;
  if (v == "quadratic") return BoundVariant::quadratic;
  throw std::invalid_argument("variant must be 'linear' or 'quadratic', got '" + v + "'");
}

InvarianceMode mode_of(const std::string& token) {
  const auto m = parse_mode(token);
  if (!m) throw std::invalid_argument("unknown invariance mode '" + token + "'");
  return *m;
}

}  // namespace

PYBIND11_MODULE(_relcalc, m) {
  m.doc() = "Linear relations in C^n: subspace arithmetic, deficiency indices, perturbation checks";

  auto base = py::register_exception<Error>(m, "RelcalcError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<TransformError>(m, "TransformError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<TolerancePolicy>(m, "Tolerance")
      .def(py::init([](double rank_rtol, double cmp_atol, double containment_tol) {
             TolerancePolicy t{rank_rtol, cmp_atol, containment_tol};
             t.validate();
             return t;
           }),
           "rank_rtol"_a = kDefaultTol.rank_rtol, "cmp_atol"_a = kDefaultTol.cmp_atol,
           "containment_tol"_a = kDefaultTol.containment_tol)
      .def_readwrite("rank_rtol", &TolerancePolicy::rank_rtol)
      .def_readwrite("cmp_atol", &TolerancePolicy::cmp_atol)
      .def_readwrite("containment_tol", &TolerancePolicy::containment_tol)
      .def("__repr__", [](const TolerancePolicy& t) {
        std::ostringstream s;
        s << "Tolerance(rank_rtol=" << t.rank_rtol << ", cmp_atol=" << t.cmp_atol
          << ", containment_tol=" << t.containment_tol << ")";
        return s.str();
      });

  py::class_<Frame>(m, "Frame")
      .def_static("zero", &Frame::zero, "ambient_dim"_a)
      .def_static("full", &Frame::full, "ambient_dim"_a)
      .def_property_readonly("ambient_dim", &Frame::ambient_dim)
      .def_property_readonly("rank", &Frame::rank)
      .def_property_readonly("basis", [](const Frame& f) { return Matrix(f.basis()); })
      .def("projector", &Frame::projector)
      .def("__repr__", [](const Frame& f) {
        return "Frame(ambient_dim=" + std::to_string(f.ambient_dim()) + ", rank=" + std::to_string(f.rank()) + ")";
      });

  m.def("orthonormalize", [](const Matrix& g, const TolerancePolicy& tol) { return orthonormalize(g, tol); },
        "generators"_a, "tol"_a = kDefaultTol);
  m.def("kernel", [](const Matrix& a, const TolerancePolicy& tol) { return kernel(a, tol); }, "a"_a,
        "tol"_a = kDefaultTol);
  m.def("complement", &complement, "frame"_a);
  m.def("intersect", &intersect, "f1"_a, "f2"_a, "tol"_a = kDefaultTol);
  m.def("span_sum", &span_sum, "f1"_a, "f2"_a, "tol"_a = kDefaultTol);
  m.def("gap", &gap, "f1"_a, "f2"_a, "Spectral norm of the difference of the two projectors.");
  m.def("same_subspace", &same_subspace, "f1"_a, "f2"_a, "tol"_a = kDefaultTol);
  m.def("is_subset", &is_subset, "f1"_a, "f2"_a, "tol"_a = kDefaultTol);

  py::class_<Relation>(m, "Relation")
      .def(py::init<Index>(), "n"_a, "The zero relation {(0, 0)} in C^n x C^n.")
      .def_property_readonly("n", &Relation::n)
      .def_property_readonly("dim", &Relation::dim)
      .def_property_readonly("graph", &Relation::graph)
      .def_property_readonly("x_block", [](const Relation& t) { return Matrix(t.x_block()); })
      .def_property_readonly("f_block", [](const Relation& t) { return Matrix(t.f_block()); })
      .def("contains", &Relation::contains, "x"_a, "f"_a, "tol"_a = kDefaultTol)
      .def("__repr__", [](const Relation& t) {
        return "Relation(n=" + std::to_string(t.n()) + ", dim=" + std::to_string(t.dim()) + ")";
      });

  m.def("from_operator", &from_operator, "matrix"_a, "domain"_a = py::none(), "tol"_a = kDefaultTol);
  m.def("from_generators", &from_generators, "generators"_a, "tol"_a = kDefaultTol,
        "Relation spanned by the columns of a 2n x k matrix (x on top, f below).");
  m.def("identity_relation", &identity_relation, "n"_a);
  m.def("domain_of", &domain_of, "t"_a, "tol"_a = kDefaultTol);
  m.def("range_of", &range_of, "t"_a, "tol"_a = kDefaultTol);
  m.def("null_of", &null_of, "t"_a, "tol"_a = kDefaultTol);
  m.def("mv_part", &mv_part, "t"_a, "tol"_a = kDefaultTol);
  m.def("_parts", [](const Relation& t, const TolerancePolicy& tol) { return dump(parts_doc(parts(t, tol))); },
        "t"_a, "tol"_a = kDefaultTol);
  m.def("inverse", &inverse, "t"_a);
  m.def("scalar_mul", &scalar_mul, "alpha"_a, "t"_a, "tol"_a = kDefaultTol);
  m.def("op_sum", &op_sum, "t"_a, "s"_a, "tol"_a = kDefaultTol);
  m.def("compose", &compose, "s"_a, "t"_a, "tol"_a = kDefaultTol, "The product S T.");
  m.def("shift", &shift, "t"_a, "lam"_a, "tol"_a = kDefaultTol, "T - lam I.");
  m.def("adjoint", &adjoint, "t"_a);
  m.def("same_relation", &same_relation, "a"_a, "b"_a, "tol"_a = kDefaultTol);
  m.def("is_hermitian", &is_hermitian, "t"_a, "tol"_a = kDefaultTol);
  m.def("is_selfadjoint", &is_selfadjoint, "t"_a, "tol"_a = kDefaultTol);
  m.def("some_image", &some_image, "t"_a, "x"_a, "tol"_a = kDefaultTol);
  m.def("_classify",
        [](const Relation& t, const TolerancePolicy& tol) {
          const Classification c = classify(t, tol);
          return dump(Json{{"is_operator", c.is_operator},
                           {"is_densely_defined", c.is_densely_defined},
                           {"is_hermitian", c.is_hermitian},
                           {"is_selfadjoint", c.is_selfadjoint}});
        },
        "t"_a, "tol"_a = kDefaultTol);

  m.def("quotient_rep", &quotient_rep, "v"_a, "e"_a);
  m.def("operator_part",
        [](const Relation& t, const TolerancePolicy& tol) {
          const OperatorPart p = operator_part(t, tol);
          return py::make_tuple(p.domain(), p.standard_matrix());
        },
        "t"_a, "tol"_a = kDefaultTol, "(D(T), matrix of the single-valued part on C^n).");
  m.def("norm_at", py::overload_cast<const Relation&, const Vector&, const TolerancePolicy&>(&norm_at), "t"_a,
        "x"_a, "tol"_a = kDefaultTol);
  m.def("relation_norm", &relation_norm, "t"_a, "tol"_a = kDefaultTol);

  m.def("deficiency_space", &deficiency_space, "t"_a, "lam"_a, "tol"_a = kDefaultTol);
  m.def("deficiency_index", &deficiency_index, "t"_a, "lam"_a, "tol"_a = kDefaultTol);
  m.def("_deficiency_indices",
        [](const Relation& t, int samples, std::uint64_t seed, const TolerancePolicy& tol) {
          const DeficiencyReport d = deficiency_indices(t, samples, seed, tol);
          Json pts = Json::array();
          for (const auto& s : d.samples) pts.push_back(Json{{"lambda", complex_to_json(s.lambda)}, {"index", s.index}});
          return dump(Json{{"d_plus", d.d_plus}, {"d_minus", d.d_minus}, {"constancy_ok", d.constancy_ok}, {"samples", pts}});
        },
        "t"_a, "samples"_a = 10, "seed"_a = 1, "tol"_a = kDefaultTol);
  m.def("resolvent_norm", &resolvent_norm, "t"_a, "z"_a, "tol"_a = kDefaultTol);

  m.def("_inclusion_report",
        [](const Relation& t, const Relation& s, const TolerancePolicy& tol) {
          const InclusionReport r = inclusion_report(t, s, tol);
          return dump(Json{{"dom_ok", r.dom_ok}, {"mv_ok", r.mv_ok}, {"null_ok", r.null_ok}, {"recompose_ok", r.recompose_ok}});
        },
        "t"_a, "s"_a, "tol"_a = kDefaultTol);
  m.def("quadratic_frontier",
        [](const Relation& t, const Relation& s, const std::vector<double>& b_grid, const TolerancePolicy& tol) {
          std::vector<std::pair<double, double>> out;
          for (const auto& p : quadratic_frontier(t, s, b_grid, tol)) out.emplace_back(p.b, p.a);
          return out;
        },
        "t"_a, "s"_a, "b_grid"_a, "tol"_a = kDefaultTol, "[(b', minimal a')] over the grid.");
  m.def("_certify_bound",
        [](const Relation& t, const Relation& s, double a, double b, const std::string& variant, int samples,
           std::uint64_t seed, const TolerancePolicy& tol) {
          const CertifyResult r = certify_bound(t, s, {a, b, parse_variant(variant), "python"}, samples, seed, tol);
          return dump(Json{{"holds", r.holds()},
                           {"worst_residual", r.worst_residual},
                           {"path", r.path},
                           {"witness", r.witness ? vector_to_json(*r.witness) : Json()}});
        },
        "t"_a, "s"_a, "a"_a, "b"_a, "variant"_a = "linear", "samples"_a = 200, "seed"_a = 1, "tol"_a = kDefaultTol);
  m.def("to_quadratic",
        [](double a, double b, double eps) {
          const RelBoundCertificate q = to_quadratic({a, b, BoundVariant::linear, ""}, eps);
          return py::make_tuple(q.a, q.b);
        },
        "a"_a, "b"_a, "eps"_a);
  m.def("shift_certificate",
        [](double a, double b, double t) {
          const RelBoundCertificate c = shift_certificate({a, b, BoundVariant::linear, ""}, t);
          return py::make_tuple(c.a, c.b);
        },
        "a"_a, "b"_a, "t"_a);
  m.def("epsilon_grid", &epsilon_grid);
  m.def("_projector_family",
        [](const Relation& a, const Relation& b, double c, const std::vector<Complex>& ks, const TolerancePolicy& tol) {
          const ProjectorFamily f = projector_family(a, b, c, ks, tol);
          Json pts = Json::array();
          for (const auto& p : f.points) {
            pts.push_back(Json{{"k", complex_to_json(p.k)}, {"gap", p.gap}, {"bound", p.bound}, {"in_range", p.in_range}});
          }
          return dump(Json{{"dom_ok", f.dom_ok}, {"mv_ok", f.mv_ok}, {"bound_ok", f.bound_ok}, {"points", pts}});
        },
        "a"_a, "b"_a, "c"_a, "k_grid"_a, "tol"_a = kDefaultTol);
  m.def("_homotopy_sweep",
        [](const Relation& t, const Relation& s, int grid, const TolerancePolicy& tol) {
          const HomotopyTrace tr = homotopy_sweep(t, s, grid, tol);
          Json pts = Json::array();
          for (const auto& p : tr.points) {
            pts.push_back(Json{{"t", p.t}, {"rank_plus", p.rank_plus}, {"rank_minus", p.rank_minus},
                               {"gap_plus", p.gap_plus}, {"gap_minus", p.gap_minus}});
          }
          return dump(Json{{"points", pts}, {"converged", tr.converged}, {"rank_constant", tr.rank_constant()}});
        },
        "t"_a, "s"_a, "grid"_a = 11, "tol"_a = kDefaultTol);
  m.def("_invariance_report",
        [](const Relation& t, const Relation& s, const std::string& mode, std::optional<double> a,
           std::optional<double> b, const std::string& variant, const TolerancePolicy& tol) {
          InvarianceOptions opts;
          if (a.has_value() != b.has_value()) throw std::invalid_argument("give both a and b or neither");
          if (a) opts.certificate = RelBoundCertificate{*a, *b, parse_variant(variant), "python"};
          const InvarianceVerdict v = invariance_report(t, s, mode_of(mode), tol, opts);
          Json hyps = Json::array();
          for (const auto& c : v.hypotheses) hyps.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
          return dump(Json{{"mode", mode_token(v.mode)},
                           {"hypotheses", hyps},
                           {"hypotheses_ok", v.hypotheses_ok},
                           {"base", {v.base.plus, v.base.minus}},
                           {"perturbed", {v.perturbed.plus, v.perturbed.minus}},
                           {"conclusion", v.conclusion},
                           {"conclusion_holds", v.conclusion_holds},
                           {"status", status_token(v.status)}});
        },
        "t"_a, "s"_a, "mode"_a, "a"_a = py::none(), "b"_a = py::none(), "variant"_a = "linear",
        "tol"_a = kDefaultTol);
  m.def("st_inverse",
        [](const Relation& t, const Relation& s, const TolerancePolicy& tol) {
          const StInverse r = st_inverse_analysis(t, s, tol);
          return py::make_tuple(r.product, r.is_operator, r.norm);
        },
        "t"_a, "s"_a, "tol"_a = kDefaultTol, "(S T^-1, is_operator, norm).");
  m.def("accretivity_margin", &accretivity_margin, "t"_a, "s"_a, "tol"_a = kDefaultTol);

  m.def("cayley_selfadjoint", &cayley_selfadjoint, "n"_a, "seed"_a, "tol"_a = kDefaultTol, "mv_dim"_a = 0,
        "null_dim"_a = 0);
  m.def("hermitian_restriction", &hermitian_restriction, "t"_a, "m"_a, "seed"_a, "tol"_a = kDefaultTol);
  m.def("_generate",
        [](const std::string& spec_text, const TolerancePolicy& tol) {
          const Generated g = generate(spec_from_json(parse_json_text(spec_text, "spec")), tol);
          return py::make_tuple(g.relation, g.partner);
        },
        "spec"_a, "tol"_a = kDefaultTol);

  m.def("_relation_to_json", [](const Relation& t) { return dump(relation_to_json(t)); }, "t"_a);
  m.def("_relation_from_json",
        [](const std::string& text, const TolerancePolicy& tol) {
          return relation_from_json(parse_json_text(text, "<string>"), tol);
        },
        "text"_a, "tol"_a = kDefaultTol);
  m.def("read_relation_file", [](const std::string& path, const TolerancePolicy& tol) {
        return read_relation_file(path, tol);
      }, "path"_a, "tol"_a = kDefaultTol);
  m.def("write_relation_file", [](const std::string& path, const Relation& t) { write_relation_file(path, t); },
        "path"_a, "t"_a);

  m.def("_run_command",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = 0;
          {
            py::gil_scoped_release release;
            code = run_command(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        "args"_a);
  m.def("suite_names", &suite_names);
}
