#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "relcalc/corpus.hpp"
#include "relcalc/relation.hpp"

namespace relcalc {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

enum class IoErrorKind { missing_file, malformed, schema, dimension };

std::string_view io_error_token(IoErrorKind k);

/// Problems reading a relation or spec document. `field` is a JSON path such
/// as "generators[2][1]" (empty when the whole document is at fault).
class IoError : public Error {
 public:
  IoError(IoErrorKind kind, std::string field, const std::string& msg);
  IoErrorKind kind() const { return kind_; }
  const std::string& field() const { return field_; }
  const std::string& detail() const { return detail_; }

 private:
  IoErrorKind kind_;
  std::string field_;
  std::string detail_;
};

/// [re, im]
Json complex_to_json(Complex z);
Json vector_to_json(const Vector& v);

/// Generator form of the relation file:
/// {"format_version": 1, "ambient": n, "generators": [[z_1, ..., z_2n], ...]}
Json relation_to_json(const Relation& t);

/// Accepts the generator form or the operator form
/// {"format_version": 1, "ambient": n, "operator": [[row], ...], "domain": [[vector], ...]}
/// where "domain" is optional (default C^n).
Relation relation_from_json(const Json& doc, const TolerancePolicy& tol);

Relation read_relation_file(const std::filesystem::path& path, const TolerancePolicy& tol);
void write_relation_file(const std::filesystem::path& path, const Relation& t);

/// Parses JSON text, turning syntax errors into IoError(malformed) with a line/column diagnostic.
Json parse_json_text(const std::string& text, const std::string& origin);

Json spec_to_json(const CorpusSpec& spec);
CorpusSpec spec_from_json(const Json& doc);

}  // namespace relcalc
