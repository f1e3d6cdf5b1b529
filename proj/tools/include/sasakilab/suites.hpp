#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <sasaki/verify.hpp>

#include "sasakilab/config.hpp"

namespace sasakilab {

enum class Expectation { kPass, kFail };

/// One row of a report. For expected failures `met` requires the residual to
/// exceed `fail_floor`, so a near miss does not count as a controlled failure.
struct CheckOutcome {
  std::string name;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Expectation expected = Expectation::kPass;
  double fail_floor = sasaki::kFailFloor;
  bool met = false;
  nlohmann::json metadata = nlohmann::json::object();
};

struct SuiteResult {
  std::vector<CheckOutcome> checks;
  /// Named categorical outcomes, each {"value", "expected", "met", ...}.
  nlohmann::json verdicts = nlohmann::json::object();
  bool ok() const;
};

inline const std::vector<std::string> kExamples = {"round", "quaternionic", "hopf-lift", "gF",
                                                   "irregular"};

/// Runs the full check battery of cfg.example against its manifest.
/// Throws sasaki::DomainError for an unknown selector.
SuiteResult run_suite(const RunConfig& cfg);

nlohmann::json to_json(const CheckOutcome& check);

}  // namespace sasakilab
