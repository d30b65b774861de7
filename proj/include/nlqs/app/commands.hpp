#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlqs/app/config.hpp"

namespace nlqs::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvariantFailure = 1,
    kExitConfigError = 2,
    kExitSingularModulation = 3,
    kExitUnsupportedClassical = 4,
    kExitOracleFailure = 5,
};

struct InvariantCheck {
    std::string name;
    bool pass = true;
    double worst_residual = 0.0;
};

struct RunManifest {
    nlohmann::json config;
    int truncation_n = 0;
    long long wall_time_ms = 0;
    std::vector<std::string> outputs;
    std::vector<InvariantCheck> invariant_report;
    nlohmann::json observations = nlohmann::json::object();

    bool all_pass() const;
};

nlohmann::json to_json(const RunManifest& manifest);

struct CommandResult {
    int exit_code = kExitOk;
    RunManifest manifest;
};

/// Writes series.csv, one <observable>.svg per column, and manifest.json.
CommandResult cmd_simulate(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                           std::ostream& log, std::ostream& err);
CommandResult run_simulation(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log,
                             std::ostream& err);

/// Compares the overlap-series A_p against the closed form for every
/// retained p on 16 phases covering one period. Prints the manifest as JSON.
CommandResult cmd_oracle_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
CommandResult run_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One simulation per value in <out_dir>/<index>_<param>_<value>/, then
/// summary.csv (value,min_P0,tau_at_min,revival,status) and manifest.json.
/// A value with singular modulation is recorded and skipped; the sweep
/// then exits with that value's code after writing the summary.
CommandResult cmd_sweep(const std::filesystem::path& config_path, const std::string& param,
                        const std::vector<double>& values, const std::filesystem::path& out_dir, std::ostream& log,
                        std::ostream& err);

}  // namespace nlqs::app
