#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlqs/app/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nlqspring: oscillators under quantized, intensity-dependent frequency modulation"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::string param;
    std::vector<double> values;

    auto* simulate = app.add_subcommand("simulate", "run one configuration and write series.csv, plots and manifest");
    simulate->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out_dir, "output directory")->required();

    auto* oracle = app.add_subcommand("oracle-check", "compare overlap-series and closed-form A_p for every retained mode");
    oracle->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("sweep", "run one simulation per parameter value and summarize");
    sweep->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sweep->add_option("--param", param, "lambda, eta, mu or alpha_sq")->required();
    sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
    sweep->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nlqs::app::kExitConfigError;
    }

    if (*simulate) return nlqs::app::cmd_simulate(config, out_dir, std::cout, std::cerr).exit_code;
    if (*oracle) return nlqs::app::cmd_oracle_check(config, std::cout, std::cerr).exit_code;
    return nlqs::app::cmd_sweep(config, param, values, out_dir, std::cout, std::cerr).exit_code;
}
