#include "nlqs/app/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "nlqs/app/output.hpp"
#include "nlqs/error.hpp"
#include "nlqs/simulation.hpp"

namespace nlqs::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kOracleTolerance = 1e-8;
constexpr double kCompletenessTolerance = 1e-8;
constexpr int kOraclePhases = 16;
constexpr double kPclSlack = 1e-9;

class Stopwatch {
public:
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Body>
CommandResult guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return {kExitConfigError, {}};
    } catch (const SingularityError& e) {
        err << "singular modulation at n = " << e.n() << ": " << e.what() << '\n';
        return {kExitSingularModulation, {}};
    } catch (const UnsupportedKindError& e) {
        err << "unsupported classical limit: " << e.what() << '\n';
        return {kExitUnsupportedClassical, {}};
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return {kExitConfigError, {}};
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return {kExitInvariantFailure, {}};
    }
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string plot_title(Observable o, const TimeSeries& ts, double alpha_sq) {
    std::string title = std::string(observable_name(o)) + ": " + ts.kind;
    for (const auto& [name, value] : ts.parameters) title += " " + name + "=" + short_number(value);
    return title + " alpha_sq=" + short_number(alpha_sq);
}

InvariantCheck range_check(const std::string& name, const std::vector<double>& values, double lo, double hi) {
    double worst = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) return {name, false, std::numeric_limits<double>::infinity()};
        worst = std::max({worst, lo - v, v - hi});
    }
    return {name, worst <= 0.0, worst};
}

json collapse_json(const CollapseRevival& c) {
    return {{"min_P0", c.min_value},       {"tau_at_min", c.tau_at_min}, {"revival_peak", c.revival_peak},
            {"tau_at_peak", c.tau_at_peak}, {"collapsed", c.collapsed},   {"revived", c.revived},
            {"detected", c.detected()}};
}

void write_manifest(const fs::path& out_dir, RunManifest& manifest) {
    const fs::path path = out_dir / "manifest.json";
    manifest.outputs.push_back(path.string());
    write_text_file(path, to_json(manifest).dump(2) + "\n");
}

}  // namespace

bool RunManifest::all_pass() const {
    for (const auto& c : invariant_report) {
        if (!c.pass) return false;
    }
    return true;
}

json to_json(const RunManifest& m) {
    json report = json::array();
    for (const auto& c : m.invariant_report) {
        report.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"worst_residual", std::isfinite(c.worst_residual) ? json(c.worst_residual) : json(nullptr)}});
    }
    return {{"config", m.config},
            {"truncation_n", m.truncation_n},
            {"wall_time_ms", m.wall_time_ms},
            {"outputs", m.outputs},
            {"invariant_report", report},
            {"observations", m.observations}};
}

CommandResult run_simulation(const RunConfig& config, const fs::path& out_dir, std::ostream& log,
                             std::ostream& err) {
    return guarded(err, [&]() -> CommandResult {
        const Stopwatch clock;
        const SimulationResult result = simulate(config.sim);
        const TimeSeries& ts = result.series;
        const double eps = config.sim.epsilon;

        fs::create_directories(out_dir);
        RunManifest m;
        m.config = config_to_json(config);
        m.truncation_n = ts.n_trunc;

        const fs::path csv_path = out_dir / "series.csv";
        write_text_file(csv_path, series_csv(ts));
        m.outputs.push_back(csv_path.string());
        for (const auto& [name, values] : ts.columns) {
            const fs::path svg_path = out_dir / (std::string(observable_name(name)) + ".svg");
            write_text_file(svg_path, render_svg(ts.tau, values, plot_title(name, ts, config.sim.alpha_sq),
                                                 std::string(observable_name(name))));
            m.outputs.push_back(svg_path.string());
        }

        m.invariant_report.push_back({"poisson-tail", result.window.tail_mass < eps, result.window.tail_mass});
        m.invariant_report.push_back({"poisson-weighted-tail",
                                      result.window.weighted_certified && result.window.weighted_tail < eps,
                                      result.window.weighted_tail});
        const auto& p0 = *ts.column(Observable::P0);
        m.invariant_report.push_back(range_check("P0-bounds", p0, 0.0, 1.0 + eps));
        if (const auto* pcl = ts.column(Observable::Pcl)) {
            m.invariant_report.push_back(range_check("Pcl-bounds", *pcl, 0.0, 1.0 + kPclSlack));
        }
        const double inf = std::numeric_limits<double>::infinity();
        if (const auto* sx = ts.column(Observable::Sx)) {
            m.invariant_report.push_back(range_check("Sx-nonnegative", *sx, 0.0, inf));
        }
        if (const auto* sp = ts.column(Observable::Sp)) {
            m.invariant_report.push_back(range_check("Sp-nonnegative", *sp, 0.0, inf));
        }

        m.observations["collapse_revival"] = collapse_json(detect_collapse_revival(ts.tau, p0));
        const auto* sx = ts.column(Observable::Sx);
        const auto* sp = ts.column(Observable::Sp);
        if (sx && sp) {
            SqueezingSeries sq{ts.tau, *sx, *sp, ts.n_trunc};
            const auto both = find_simultaneous_squeezing(sq);
            m.observations["simultaneous_squeezing"] = {
                {"count", both.count}, {"first_tau", both.first_tau}, {"worst_depth", both.worst_depth}};
        }

        m.wall_time_ms = clock.elapsed_ms();
        write_manifest(out_dir, m);

        const bool ok = m.all_pass();
        log << "simulate: " << ts.kind << " N=" << ts.n_trunc << " samples=" << ts.tau.size() << " -> "
            << out_dir.string() << (ok ? "" : " (invariant failure)") << '\n';
        if (!ok) {
            for (const auto& c : m.invariant_report) {
                if (!c.pass) err << "invariant failed: " << c.name << " worst residual " << c.worst_residual << '\n';
            }
        }
        return {ok ? kExitOk : kExitInvariantFailure, std::move(m)};
    });
}

CommandResult cmd_simulate(const fs::path& config_path, const fs::path& out_dir, std::ostream& log,
                           std::ostream& err) {
    return guarded(err, [&] { return run_simulation(load_config(config_path), out_dir, log, err); });
}

CommandResult run_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> CommandResult {
        const Stopwatch clock;
        const auto& sim = config.sim;
        sim.validate();
        const auto table = build_table(sim.spec, window_table_extent(sim.alpha_sq, sim.epsilon, sim.spec));
        const auto window = poisson_window(sim.alpha_sq, sim.epsilon, table);

        double worst_dev = 0.0;
        int worst_p = 0;
        double worst_phase = 0.0;
        double worst_residual = 0.0;
        int worst_residual_p = 0;
        // Modes added only by the Omega^2-weighted extension can have Omega
        // too large for the series to converge within l_max <= 128.
        for (int p = 0; p <= window.plain_cutoff; ++p) {
            const double w = table.omega_n[p];
            const int l_max = sim.l_max.value_or(auto_l_max(w));
            const int quad = sim.quad_order.value_or(auto_quad_order(l_max));
            const auto overlaps = overlap_table(w, l_max, quad);
            const double residual = std::abs(overlaps.completeness_residual);
            if (residual > worst_residual) {
                worst_residual = residual;
                worst_residual_p = p;
            }
            if (!(residual < kCompletenessTolerance)) continue;
            for (int k = 0; k < kOraclePhases; ++k) {
                // Omega * omega_t sweeps one period of A_p.
                const double phase = std::numbers::pi * k / kOraclePhases;
                const double omega_t = phase / w;
                const double dev = std::abs(a_p_series(w, omega_t, overlaps) - a_p_closed(w, omega_t));
                if (dev > worst_dev) {
                    worst_dev = dev;
                    worst_p = p;
                    worst_phase = phase;
                }
            }
        }

        RunManifest m;
        m.config = config_to_json(config);
        m.truncation_n = window.plain_cutoff;
        m.invariant_report.push_back(
            {"poisson-tail", poisson_tail(sim.alpha_sq, window.plain_cutoff) < sim.epsilon,
             poisson_tail(sim.alpha_sq, window.plain_cutoff)});
        m.invariant_report.push_back(
            {"completeness-residual", worst_residual < kCompletenessTolerance, worst_residual});
        m.invariant_report.push_back({"oracle-deviation", worst_dev < kOracleTolerance, worst_dev});
        m.observations["worst_deviation"] = {{"p", worst_p}, {"phase", worst_phase}, {"deviation", worst_dev}};
        m.observations["worst_completeness"] = {{"p", worst_residual_p}, {"residual", worst_residual}};
        m.wall_time_ms = clock.elapsed_ms();
        out << to_json(m).dump(2) << '\n';

        if (!m.all_pass()) {
            err << "oracle failure: worst deviation " << worst_dev << " at p = " << worst_p
                << ", phase = " << worst_phase << "; worst completeness residual " << worst_residual
                << " at p = " << worst_residual_p << '\n';
            return {kExitOracleFailure, std::move(m)};
        }
        err << "oracle-check: " << window.plain_cutoff + 1 << " modes, worst deviation " << worst_dev << '\n';
        return {kExitOk, std::move(m)};
    });
}

CommandResult cmd_oracle_check(const fs::path& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { return run_oracle_check(load_config(config_path), out, err); });
}

CommandResult cmd_sweep(const fs::path& config_path, const std::string& param, const std::vector<double>& values,
                        const fs::path& out_dir, std::ostream& log, std::ostream& err) {
    return guarded(err, [&]() -> CommandResult {
        const Stopwatch clock;
        const RunConfig base = load_config(config_path);
        if (values.empty()) throw ConfigError(config_path.string(), 0, "sweep needs at least one value");
        std::vector<RunConfig> runs;
        for (double v : values) runs.push_back(with_parameter(base, param, v));

        fs::create_directories(out_dir);
        RunManifest m;
        m.config = config_to_json(base);
        m.observations["param"] = param;
        m.observations["values"] = values;

        // Values where the modulation is singular or lacks a classical limit
        // get a row with status and no numbers; the sweep carries on and
        // reports the first such code at the end.
        std::string summary = "value,min_P0,tau_at_min,revival,status\n";
        int exit_code = kExitOk;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            char prefix[32];
            std::snprintf(prefix, sizeof prefix, "%03zu_", i);
            const std::string name = prefix + param + "_" + short_number(values[i]);
            auto run = run_simulation(runs[i], out_dir / name, log, err);
            const int code = run.exit_code;
            if (code == kExitSingularModulation || code == kExitUnsupportedClassical) {
                summary += format_double(values[i]) + ",,,n/a," +
                           (code == kExitSingularModulation ? "singular" : "unsupported") + "\n";
                m.invariant_report.push_back({name + "/run", false, std::nan("")});
                if (exit_code == kExitOk || exit_code == kExitInvariantFailure) exit_code = code;
                continue;
            }
            if (code != kExitOk && code != kExitInvariantFailure) return {code, std::move(m)};
            if (code != kExitOk && exit_code == kExitOk) exit_code = kExitInvariantFailure;

            const auto& c = run.manifest.observations.at("collapse_revival");
            summary += format_double(values[i]) + "," + format_double(c.at("min_P0").get<double>()) + "," +
                       format_double(c.at("tau_at_min").get<double>()) + "," +
                       (c.at("detected").get<bool>() ? "yes" : "no") + "," +
                       (code == kExitOk ? "ok" : "invariant-failure") + "\n";
            m.truncation_n = std::max(m.truncation_n, run.manifest.truncation_n);
            for (const auto& check : run.manifest.invariant_report) {
                m.invariant_report.push_back({name + "/" + check.name, check.pass, check.worst_residual});
            }
            m.outputs.push_back((out_dir / name / "manifest.json").string());
        }
        const fs::path summary_path = out_dir / "summary.csv";
        write_text_file(summary_path, summary);
        m.outputs.push_back(summary_path.string());
        m.wall_time_ms = clock.elapsed_ms();
        write_manifest(out_dir, m);
        log << "sweep: " << runs.size() << " runs of " << param << " -> " << summary_path.string() << '\n';
        return {exit_code, std::move(m)};
    });
}

}  // namespace nlqs::app
