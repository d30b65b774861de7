#include "nlqs/simulation.hpp"

#include <algorithm>

namespace nlqs {

namespace {

bool wants(const SimulationConfig& config, Observable o) {
    return o == Observable::P0 ||
           std::find(config.observables.begin(), config.observables.end(), o) != config.observables.end();
}

}  // namespace

std::vector<std::pair<std::string, double>> spec_parameters(const NonlinearitySpec& spec) {
    if (const auto* ra = spec.get_if<RaiAgarwal>()) return {{"mu", ra->mu}};
    if (const auto* q = spec.get_if<QDeformed>()) return {{"lambda", q->lambda}};
    if (const auto* ti = spec.get_if<TrappedIon>()) return {{"eta", ti->eta}};
    if (const auto* s = spec.get_if<Spectrum>()) return {{"n_energies", static_cast<double>(s->energies.size())}};
    return {};
}

SimulationResult simulate(const SimulationConfig& config) {
    config.validate();
    SimulationResult r;
    // Pcl needs no table; check support before doing any work.
    if (wants(config, Observable::Pcl)) (void)omega_real(config.spec, config.alpha_sq);

    r.table = build_table(config.spec, window_table_extent(config.alpha_sq, config.epsilon, config.spec));
    r.window = poisson_window(config.alpha_sq, config.epsilon, r.table);

    auto& ts = r.series;
    ts.tau = tau_grid(config);
    ts.kind = std::string(kind_name(config.spec.kind()));
    ts.parameters = spec_parameters(config.spec);
    ts.n_trunc = r.window.n_trunc;

    ts.columns.emplace_back(Observable::P0, survival_probability(ts.tau, r.window, r.table));
    if (wants(config, Observable::Pcl)) {
        ts.columns.emplace_back(Observable::Pcl, classical_probability(ts.tau, config.spec, config.alpha_sq));
    }
    if (wants(config, Observable::Sx) || wants(config, Observable::Sp)) {
        auto sq = squeezing_series(ts.tau, r.window, r.table);
        if (wants(config, Observable::Sx)) ts.columns.emplace_back(Observable::Sx, std::move(sq.sx));
        if (wants(config, Observable::Sp)) ts.columns.emplace_back(Observable::Sp, std::move(sq.sp));
    }
    return r;
}

}  // namespace nlqs
