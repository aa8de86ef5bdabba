#pragma once

#include <filesystem>

#include <json.hpp>

#include "hetnet/hetnet_model.hpp"

namespace hetnet {

/// Scenario document. Field names carry their units, e.g.
/// `tier1.lambda_per_area`, `tier2.mu_per_length`, `tier4.power_dbm`.
nlohmann::json scenario_to_json(const ScenarioConfig& scenario);

/// Inverse of scenario_to_json. Missing tiers are disabled; unknown keys and
/// type errors raise ConfigError naming the field. The result is validated.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

/// Throws IoError when the file cannot be read, ConfigError when it is not a
/// valid scenario.
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace hetnet
