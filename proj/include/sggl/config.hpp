#pragma once

// Run configuration file: one JSON object with sections params, noise, sim
// and monotonicity. Unknown keys and ill-typed values raise ConfigError
// naming the dotted key (e.g. "params.beta").

#include <string>
#include <vector>

#include "sggl/core_types.hpp"
#include "sggl/inequality_lab.hpp"
#include "sggl/integrator.hpp"
#include "sggl/jump_noise.hpp"

namespace sggl {

struct RunConfig {
  GLParams params;
  JumpModel noise;
  SimConfig sim;
  InitialCondition initial;
  std::vector<std::size_t> levels{8, 16, 32};  // galerkin-scan truncations
  double delta = 1e-3;                         // uniqueness perturbation size
  MonotonicityConfig monotonicity;
  SuiteConfig suite;  // samples, oy_samples, n, seed live under "monotonicity"

  /// Runs every validator; throws ConfigError.
  void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
/// Canonical JSON form (all keys, values as loaded).
std::string dump_config(const RunConfig& cfg);

/// One line per config key: "section.key  default  description".
std::string config_key_help();

}  // namespace sggl
