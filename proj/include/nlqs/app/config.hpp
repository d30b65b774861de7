#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "nlqs/dynamics.hpp"

namespace nlqs::app {

/// A validated run configuration.
///
/// The file is a flat JSON object:
///
///     {"kind": "q_deformed", "lambda": 0.15, "alpha_sq": 4.0,
///      "tau_max": 60, "steps": 6000, "epsilon": 1e-10,
///      "observables": ["P0", "Sx"], "l_max": "auto", "quad_order": "auto"}
///
/// Exactly the parameter of the chosen kind must be present (mu, lambda,
/// eta, or spectrum_path, the last resolved relative to the config file).
/// Every error is a ConfigError pointing at the line of the offending key.
struct RunConfig {
    SimulationConfig sim;
    std::string source = "<config>";
    std::optional<std::filesystem::path> spectrum_path;
};

RunConfig parse_config(std::string_view text, const std::string& source,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Config echo for manifests; round-trips through parse_config.
nlohmann::json config_to_json(const RunConfig& config);

/// Copy of config with one sweepable parameter replaced. Throws ConfigError
/// when the parameter does not belong to the config's kind or the value is
/// out of range.
RunConfig with_parameter(const RunConfig& config, std::string_view param, double value);

}  // namespace nlqs::app
