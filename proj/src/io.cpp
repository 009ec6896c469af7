#include "relcalc/io.hpp"

#include <fstream>
#include <sstream>

namespace relcalc {

std::string_view io_error_token(IoErrorKind k) {
  switch (k) {
    case IoErrorKind::missing_file: return "missing-file";
    case IoErrorKind::malformed: return "malformed";
    case IoErrorKind::schema: return "schema";
    case IoErrorKind::dimension: return "dimension";
  }
  return "unknown";
}

IoError::IoError(IoErrorKind kind, std::string field, const std::string& msg)
    : Error(field.empty() ? msg : field + ": " + msg), kind_(kind), field_(std::move(field)), detail_(msg) {}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void schema(const std::string& field, const std::string& msg) {
  throw IoError(IoErrorKind::schema, field, msg);
}

[[noreturn]] void dimension(const std::string& field, const std::string& msg) {
  throw IoError(IoErrorKind::dimension, field, msg);
}

const Json& member(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) schema(key, "required field is missing");
  return doc.at(key);
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) schema(field, "complex scalars are written as [re, im]");
  for (std::size_t k = 0; k < 2; ++k) {
    if (!j[k].is_number()) schema(at(field, k), "expected a decimal number");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) schema(field, "non-finite value");
  return {re, im};
}

Vector vector_from_json(const Json& j, Index expected, const std::string& field) {
  if (!j.is_array()) schema(field, "expected an array of [re, im] pairs");
  if (static_cast<Index>(j.size()) != expected) {
    dimension(field, "expected " + std::to_string(expected) + " entries, found " +
                         std::to_string(j.size()));
  }
  Vector v(expected);
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i], at(field, i));
  return v;
}

Matrix columns_from_json(const Json& j, Index length, const std::string& field) {
  if (!j.is_array()) schema(field, "expected a list of vectors");
  Matrix m(length, static_cast<Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    m.col(static_cast<Index>(c)) = vector_from_json(j[c], length, at(field, c));
  }
  return m;
}

}  // namespace

Json relation_to_json(const Relation& t) {
  Json gens = Json::array();
  for (Index c = 0; c < t.dim(); ++c) gens.push_back(vector_to_json(t.graph().basis().col(c)));
  return Json{{"format_version", kFormatVersion}, {"ambient", t.n()}, {"generators", gens}};
}

Relation relation_from_json(const Json& doc, const TolerancePolicy& tol) {
  if (!doc.is_object()) schema("", "relation document must be a JSON object");
  const Json& version = member(doc, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    schema("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  }
  const Json& ambient = member(doc, "ambient");
  if (!ambient.is_number_integer() || ambient.get<long long>() < 1) {
    schema("ambient", "expected a positive integer");
  }
  const Index n = ambient.get<Index>();
  const bool has_gens = doc.contains("generators");
  const bool has_op = doc.contains("operator");
  if (has_gens == has_op) schema("", "exactly one of \"generators\" or \"operator\" is required");
  if (has_gens) {
    const Matrix g = columns_from_json(doc["generators"], 2 * n, "generators");
    if (g.cols() == 0) return Relation(n);
    return from_generators(g, tol);
  }
  const Json& op = doc["operator"];
  if (!op.is_array()) schema("operator", "expected a list of rows");
  if (static_cast<Index>(op.size()) != n) {
    dimension("operator", "expected " + std::to_string(n) + " rows, found " + std::to_string(op.size()));
  }
  Matrix m(n, n);
  for (std::size_t r = 0; r < op.size(); ++r) {
    m.row(static_cast<Index>(r)) = vector_from_json(op[r], n, at("operator", r)).transpose();
  }
  std::optional<Frame> domain;
  if (doc.contains("domain")) domain = orthonormalize(columns_from_json(doc["domain"], n, "domain"), tol);
  return from_operator(m, domain, tol);
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw IoError(IoErrorKind::malformed, "",
                  origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

Relation read_relation_file(const std::filesystem::path& path, const TolerancePolicy& tol) {
  std::ifstream in(path);
  if (!in) throw IoError(IoErrorKind::missing_file, "", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const Json doc = parse_json_text(buf.str(), path.string());
  try {
    return relation_from_json(doc, tol);
  } catch (const IoError& e) {
    throw IoError(e.kind(), e.field(), e.detail() + " (in " + path.string() + ")");
  }
}

void write_relation_file(const std::filesystem::path& path, const Relation& t) {
  std::ofstream out(path);
  if (!out) throw IoError(IoErrorKind::missing_file, "", "cannot write " + path.string());
  out << relation_to_json(t).dump(2) << '\n';
}

Json spec_to_json(const CorpusSpec& spec) {
  Json j{{"kind", kind_token(spec.kind)}, {"n", spec.n}, {"seed", spec.seed}};
  switch (spec.kind) {
    case CorpusKind::jacobi:
      j["diag"] = spec.diag;
      j["offdiag"] = spec.offdiag;
      j["restrict_ends"] = spec.restrict_ends;
      break;
    case CorpusKind::pair:
      j["profile"] = profile_token(spec.profile);
      j["param"] = spec.param;
      [[fallthrough]];
    case CorpusKind::cayley:
    case CorpusKind::restriction:
      j["mv_dim"] = spec.mv_dim;
      j["null_dim"] = spec.null_dim;
      if (spec.graph_dim) j["graph_dim"] = *spec.graph_dim;
      break;
  }
  return j;
}

CorpusSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) schema("", "corpus spec must be a JSON object");
  CorpusSpec s;
  const Json& kind = member(doc, "kind");
  const auto k = kind.is_string() ? parse_kind(kind.get<std::string>()) : std::nullopt;
  if (!k) schema("kind", "expected one of cayley, restriction, pair, jacobi");
  s.kind = *k;
  auto integer = [&](const char* key, auto& dst, bool required) {
    if (!doc.contains(key)) {
      if (required) schema(key, "required field is missing");
      return;
    }
    if (!doc[key].is_number_integer()) schema(key, "expected an integer");
    dst = doc[key].get<std::remove_reference_t<decltype(dst)>>();
  };
  integer("n", s.n, true);
  integer("seed", s.seed, true);
  integer("mv_dim", s.mv_dim, false);
  integer("null_dim", s.null_dim, false);
  if (doc.contains("graph_dim")) {
    Index g = 0;
    integer("graph_dim", g, true);
    s.graph_dim = g;
  }
  if (doc.contains("profile")) {
    const auto p = doc["profile"].is_string() ? parse_profile(doc["profile"].get<std::string>()) : std::nullopt;
    if (!p) schema("profile", "unknown pair profile");
    s.profile = *p;
  }
  if (doc.contains("param")) {
    if (!doc["param"].is_number()) schema("param", "expected a number");
    s.param = doc["param"].get<double>();
  }
  auto reals = [&](const char* key, std::vector<double>& dst) {
    if (!doc.contains(key)) return;
    const Json& a = doc[key];
    if (!a.is_array()) schema(key, "expected an array of numbers");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number()) schema(at(key, i), "expected a number");
      dst.push_back(a[i].get<double>());
    }
  };
  reals("diag", s.diag);
  reals("offdiag", s.offdiag);
  if (doc.contains("restrict_ends")) {
    if (!doc["restrict_ends"].is_boolean()) schema("restrict_ends", "expected true or false");
    s.restrict_ends = doc["restrict_ends"].get<bool>();
  }
  if (s.n < 1) schema("n", "expected a positive integer");
  return s;
}

}  // namespace relcalc
