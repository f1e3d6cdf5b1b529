#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sasakilab {

inline constexpr const char* kSchemaId = "sasakilab-report/1";

enum class OutputFormat { kText, kJson };

struct RunConfig {
  std::string example = "round";
  int n = 3;
  int m = 1;
  double c = 0.3;
  std::string a = "irr:sqrt2m1";
  std::uint64_t seed = 42;
  int samples = 200;
  double fd_step = 1e-4;
  OutputFormat format = OutputFormat::kText;
  bool timestamp = true;
  // classify-flow only
  std::vector<std::string> rates;
  bool probe = false;
};

/// The effective configuration as echoed into reports.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace sasakilab
