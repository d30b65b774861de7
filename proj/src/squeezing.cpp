#include "nlqs/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlqs/error.hpp"

namespace nlqs {

SqueezingSeries squeezing_series(std::span<const double> tau, const PoissonWindow& window,
                                 const ModulationTable& table) {
    if (window.n_trunc > table.n_max) throw DomainError("squeezing_series: table shorter than the window");

    // Per-mode amplitudes Q(n)(1 - Omega^-2) and Q(n)(Omega^2 - 1).
    const int n_terms = window.n_trunc + 1;
    std::vector<double> x_amp(n_terms);
    std::vector<double> p_amp(n_terms);
    for (int n = 0; n < n_terms; ++n) {
        const double w = table.omega_n[n];
        if (!table.valid[n] || !(w > 0.0)) {
            throw SingularityError(n, "squeezing_series: invalid Omega(" + std::to_string(n) + ")");
        }
        x_amp[n] = window.weights[n] * (1.0 - 1.0 / (w * w));
        p_amp[n] = window.weights[n] * (w * w - 1.0);
    }

    SqueezingSeries s;
    s.tau.assign(tau.begin(), tau.end());
    s.sx.resize(tau.size());
    s.sp.resize(tau.size());
    s.n_trunc = window.n_trunc;
    for (std::size_t k = 0; k < tau.size(); ++k) {
        const double omega_t = 2.0 * std::numbers::pi * tau[k];
        double dx = 0.0;
        double dp = 0.0;
        for (int n = 0; n < n_terms; ++n) {
            const double sn = std::sin(table.omega_n[n] * omega_t);
            const double s2 = sn * sn;
            dx += x_amp[n] * s2;
            dp += p_amp[n] * s2;
        }
        s.sx[k] = 1.0 - dx;
        s.sp[k] = 1.0 + dp;
    }
    return s;
}

SqueezingSeries squeezing_series(const SimulationConfig& config, const ModulationTable& table) {
    const auto window = poisson_window(config.alpha_sq, config.epsilon, table);
    const auto tau = tau_grid(config);
    return squeezing_series(tau, window, table);
}

std::pair<double, double> heisenberg_xp_check(double omega_n, double omega_t) {
    if (!(omega_n > 0.0)) throw DomainError("heisenberg_xp_check: Omega must be > 0");
    const double phase = omega_n * omega_t;
    constexpr double x0 = 1.0;
    constexpr double p0 = 0.0;
    return {x0 * std::cos(phase) + p0 / omega_n * std::sin(phase),
            p0 * std::cos(phase) - omega_n * x0 * std::sin(phase)};
}

SimultaneousSqueezing find_simultaneous_squeezing(const SqueezingSeries& series, double tolerance) {
    SimultaneousSqueezing r;
    for (std::size_t k = 0; k < series.sx.size(); ++k) {
        const double depth = std::min(1.0 - series.sx[k], 1.0 - series.sp[k]);
        if (depth > tolerance) {
            if (r.count == 0) r.first_tau = series.tau[k];
            ++r.count;
            r.worst_depth = std::max(r.worst_depth, depth);
        }
    }
    return r;
}

}  // namespace nlqs
