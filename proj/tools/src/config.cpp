#include "sasakilab/config.hpp"

namespace sasakilab {

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"example", cfg.example},
          {"n", cfg.n},
          {"m", cfg.m},
          {"c", cfg.c},
          {"a", cfg.a},
          {"seed", cfg.seed},
          {"samples", cfg.samples},
          {"fd_step", cfg.fd_step},
          {"format", cfg.format == OutputFormat::kJson ? "json" : "text"},
          {"rates", cfg.rates},
          {"probe", cfg.probe}};
}

}  // namespace sasakilab
