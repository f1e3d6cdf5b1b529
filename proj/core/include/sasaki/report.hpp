#pragma once

#include <nlohmann/json.hpp>

#include "sasaki/flow.hpp"
#include "sasaki/killing.hpp"
#include "sasaki/verify.hpp"

namespace sasaki {

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const StandardDecomposition& dec);
nlohmann::json to_json(const DecompositionResiduals& res);
nlohmann::json to_json(const PerLemmaReport& report);
nlohmann::json to_json(const Period& period);
nlohmann::json to_json(const FlowClassification& cls);
nlohmann::json to_json(const OrbitProbe& probe);
nlohmann::json to_json(const SplittingResult& split);

}  // namespace sasaki
