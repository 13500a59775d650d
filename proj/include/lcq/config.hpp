#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lcq/function.hpp"
#include "lcq/mc.hpp"
#include "lcq/starbody.hpp"

namespace lcq {

// Declarative function construction: {"family": ..., "dim": ..., "params":
// {...}, "shift": [...], "linear_map": [[...], ...]}.
FunctionDescriptor function_from_json(const nlohmann::json& j);

// {"type": "ball"|"box"|"ellipsoid", ...}.
StarBody body_from_json(const nlohmann::json& j);

// {"samples": int, "seed": int, "inner_samples": int, ...} — unknown keys are
// rejected to keep configs honest.
McSpec mcspec_from_json(const nlohmann::json& j, uint64_t default_seed);

struct RunConfig {
  std::vector<nlohmann::json> function_specs;  // raw; instantiated per dim
  std::vector<std::string> suites;
  std::vector<int> dims{2, 3};
  std::vector<int> ks{1};
  McSpec mc;
  uint64_t seed = 0;
  std::string output;
  std::string config_hash;
};

RunConfig parse_run_config(const nlohmann::json& j);

// All function instances of the config at dimension n.
std::vector<FunctionDescriptor> instantiate_functions(const RunConfig& cfg, int n);

}  // namespace lcq
