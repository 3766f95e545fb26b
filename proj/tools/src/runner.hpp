#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace flowlab::cli {

struct ScenarioInfo {
    std::string name;
    std::string description;
};

const std::vector<ScenarioInfo>& registry();

// Text of the config shipped for a registered scenario.
std::optional<std::string_view> bundled_config(std::string_view name);

// Scenario-level checks on top of the schema; throws ConfigError.
void validate(const ScenarioConfig& cfg);

struct RunOptions {
    std::filesystem::path out_dir;
    bool quiet = true;
};

struct RunResult {
    nlohmann::ordered_json summary;
    bool verdicts_ok = true;
    std::vector<std::filesystem::path> files;
};

// Runs the scenario and writes the requested CSVs and summary.json into
// out_dir. Solver failures propagate as flowlab::Error.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

}  // namespace flowlab::cli
