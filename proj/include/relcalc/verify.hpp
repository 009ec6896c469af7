#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcalc/io.hpp"

namespace relcalc {

enum class CheckStatus { pass, fail, skip };

std::string_view check_token(CheckStatus s);

/// One row of a report's "checks" array.
struct CheckResult {
  std::string name;
  std::string anchor;  ///< the statement being exercised, in words
  CheckStatus status = CheckStatus::skip;
  int instances = 0;
  Json witness;  ///< first failing instance (null when none)
};

Json check_to_json(const CheckResult& c);

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::vector<Index> sizes = default_sizes();
  int replicas = 5;
  int samples = 20;  ///< sampled vectors / points per corpus item
};

/// Suite names accepted by run_suite, in execution order for "all".
const std::vector<std::string>& suite_names();

/// Runs a named suite; throws std::invalid_argument for unknown names.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts,
                                   const TolerancePolicy& tol);

}  // namespace relcalc
