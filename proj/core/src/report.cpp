#include "sasaki/report.hpp"

#include <cmath>

namespace sasaki {

namespace {

/// JSON has no infinity; non-finite residuals serialize as null.
nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["max_residual"] = number(report.max_residual);
  j["mean_residual"] = number(report.mean_residual);
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  j["degenerate"] = report.degenerate;
  j["metadata"] = report.metadata;
  j["notes"] = report.notes;
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : report.children) children.push_back(to_json(c));
  j["children"] = std::move(children);
  return j;
}

nlohmann::json to_json(const StandardDecomposition& dec) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : dec.pairs) {
    blocks.push_back({{"lambda", b.lambda}, {"dim", b.basis.size()}});
  }
  return {{"g0_dim", dec.zero_space.size()}, {"blocks", blocks}, {"total_dim", dec.total_dim()}};
}

nlohmann::json to_json(const DecompositionResiduals& res) {
  return {{"zero_space", res.zero_space},
          {"eigen_blocks", res.eigen_blocks},
          {"reconstruction", number(res.reconstruction)},
          {"antisymmetry", res.antisymmetry}};
}

nlohmann::json to_json(const PerLemmaReport& report) {
  nlohmann::json fields = nlohmann::json::array();
  for (const auto& f : report.fields) {
    fields.push_back({{"name", f.name},
                      {"lambda", f.lambda},
                      {"max_orthogonality", f.max_orthogonality},
                      {"max_bracket", f.max_bracket},
                      {"max_eigen", f.max_eigen},
                      {"pass", f.pass}});
  }
  return {{"fields", fields}, {"tolerance", report.tolerance}, {"pass", report.pass}};
}

nlohmann::json to_json(const Period& period) {
  return {{"exact", period.to_string()}, {"value", period.value()}};
}

nlohmann::json to_json(const FlowClassification& cls) {
  nlohmann::json exceptional = nlohmann::json::array();
  for (const auto& p : cls.exceptional_periods) exceptional.push_back(to_json(p));
  return {{"verdict", to_string(cls.verdict)},
          {"generic_period", cls.generic_period ? to_json(*cls.generic_period) : nlohmann::json("none")},
          {"exceptional_periods", exceptional},
          {"closure_torus_dim", cls.closure_torus_dim}};
}

nlohmann::json to_json(const OrbitProbe& probe) {
  return {{"grid_step", probe.grid_step},
          {"horizon", probe.horizon},
          {"tolerance", probe.tolerance},
          {"return_times", probe.return_times},
          {"first_return", probe.first_return ? nlohmann::json(*probe.first_return) : nlohmann::json()},
          {"min_distance", number(probe.min_distance)}};
}

nlohmann::json to_json(const SplittingResult& split) {
  return {{"constant_dims", split.constant_dims},
          {"dim_plus", split.dim_plus},
          {"dim_minus", split.dim_minus},
          {"max_square_residual", split.max_square_residual},
          {"max_projector_residual", split.max_projector_residual},
          {"points", split.points.size()}};
}

}  // namespace sasaki
