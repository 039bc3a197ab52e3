#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "irw/simulation.hpp"

namespace irw {

// Scenario JSON schema:
//   { "n": 100, "d": 200, "beta_star": [4, 3, 2, -2, -2, 2],
//     "model": "homoscedastic", "seed": 1,
//     "error": { "type": "lognormal", "mu_log": 0, "sigma_log": 1.2,
//                "centered": true } }
// beta_star shorter than d is padded with zeros. A top-level array holds
// several scenarios.
ErrorDist error_dist_from_json(const nlohmann::json& j);
nlohmann::json error_dist_to_json(const ErrorDist& dist);

ScenarioSpec scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

std::vector<ScenarioSpec> load_scenarios(const std::string& path);

}  // namespace irw
