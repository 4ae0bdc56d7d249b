#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "poldm/design_spec.hpp"

namespace poldm {

// A configuration document failed validation. The message names the JSON
// path of the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

// A design spec as read from a configuration document, plus evaluation
// defaults and the original document for lossless re-emission.
struct RunConfig {
    DesignSpec design{};
    double sweep_step_deg = 1.0;
    nlohmann::json document;
};

RunConfig parse_run_config(const nlohmann::json& document);
RunConfig load_run_config(const std::filesystem::path& path);

// The document the config was loaded from, unchanged.
nlohmann::json emit_run_config(const RunConfig& config);

}  // namespace poldm
