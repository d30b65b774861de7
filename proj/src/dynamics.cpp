#include "nlqs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlqs/error.hpp"
#include "nlqs/specfun.hpp"

namespace nlqs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxEpsilon = 1e-3;
constexpr double kScanMargin = 1e-12;
constexpr double kSeriesCompleteness = 1e-8;

void require_positive_omega(double omega_p, const char* where) {
    if (!std::isfinite(omega_p) || !(omega_p > 0.0)) {
        throw DomainError(std::string(where) + ": Omega must be finite and > 0, got " + std::to_string(omega_p));
    }
}

// 1 - |A_p|^2 at phase omega_t.
double survival_deficit(double omega_p, double omega_t) {
    return 1.0 - std::norm(a_p_closed(omega_p, omega_t));
}

}  // namespace

std::string_view observable_name(Observable o) {
    switch (o) {
        case Observable::P0: return "P0";
        case Observable::Pcl: return "Pcl";
        case Observable::Sx: return "Sx";
        case Observable::Sp: return "Sp";
    }
    return "?";
}

Observable parse_observable(std::string_view name) {
    for (Observable o : {Observable::P0, Observable::Pcl, Observable::Sx, Observable::Sp}) {
        if (observable_name(o) == name) return o;
    }
    throw DomainError("unknown observable '" + std::string(name) + "' (expected P0, Pcl, Sx or Sp)");
}

void SimulationConfig::validate() const {
    if (!std::isfinite(alpha_sq) || alpha_sq < 0.0) throw DomainError("alpha_sq must be finite and >= 0");
    if (!std::isfinite(tau_max) || !(tau_max > 0.0)) throw DomainError("tau_max must be finite and > 0");
    if (steps < 2) throw DomainError("steps must be >= 2");
    if (!(epsilon > 0.0) || epsilon > kMaxEpsilon) throw DomainError("epsilon must lie in (0, 1e-3]");
    if (l_max && (*l_max < 0 || 2 * *l_max > 256)) throw DomainError("l_max must lie in [0, 128]");
    if (quad_order && (*quad_order < 1 || *quad_order > 256)) throw DomainError("quad_order must lie in [1, 256]");
    if (l_max && quad_order && *quad_order < 2 * *l_max) throw DomainError("quad_order must be >= 2*l_max");
    if (observables.empty()) throw DomainError("observables must not be empty");
}

std::vector<double> tau_grid(const SimulationConfig& config) {
    std::vector<double> tau(static_cast<std::size_t>(config.steps) + 1);
    for (int k = 0; k <= config.steps; ++k) tau[k] = config.tau_max * k / config.steps;
    return tau;
}

double poisson_tail(double mean, int n) {
    if (!(mean >= 0.0)) throw DomainError("poisson_tail: mean must be >= 0");
    if (n < 0) return 1.0;
    if (mean == 0.0) return 0.0;
    if (n + 1 < mean) {
        // Tail is O(1) here, so summing the head loses nothing that matters.
        const auto head = specfun::poisson_weights(mean, n);
        double s = 0.0;
        for (double q : head) s += q;
        return std::max(0.0, 1.0 - s);
    }
    // Terms decrease monotonically beyond the mean.
    const double log_mean = std::log(mean);
    int p = n + 1;
    double term = std::exp(p * log_mean - mean - specfun::log_factorial(p));
    double tail = 0.0;
    while (term > 0.0 && term > 1e-18 * tail) {
        tail += term;
        ++p;
        term *= mean / p;
    }
    return tail;
}

int poisson_cutoff(double mean, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("poisson_cutoff: epsilon must be > 0");
    int n = mean > 1.0 ? static_cast<int>(mean) - 1 : 0;
    while (n > 0 && poisson_tail(mean, n - 1) < epsilon) --n;
    while (poisson_tail(mean, n) >= epsilon) ++n;
    return n;
}

int window_table_extent(double mean, double epsilon, const NonlinearitySpec& spec) {
    const int plain = poisson_cutoff(mean, epsilon);
    const int limit = max_table_index(spec);
    if (plain > limit) {
        throw DomainError("spectrum too short: the Poisson window needs Omega up to n = " + std::to_string(plain) +
                          " (e_0..e_" + std::to_string(plain + 1) + "), but only e_0..e_" +
                          std::to_string(limit + 1) + " are available");
    }
    return std::min(limit, poisson_cutoff(mean, epsilon * kScanMargin) + 1);
}

PoissonWindow poisson_window(double mean, double epsilon, const ModulationTable& table) {
    const int plain = poisson_cutoff(mean, epsilon);
    if (plain > table.n_max) {
        throw DomainError("poisson_window: table ends at n = " + std::to_string(table.n_max) +
                          " but the Poisson window needs n = " + std::to_string(plain));
    }
    auto usable = [&](int p) { return table.valid[p] && table.omega_n[p] > 0.0; };
    for (int p = 0; p <= plain; ++p) {
        if (!usable(p)) {
            throw SingularityError(p, "Omega(" + std::to_string(p) + ") = " + std::to_string(table.omega_n[p]) +
                                          " is singular or non-positive inside the retained Poisson window");
        }
    }

    int limit = plain;
    while (limit < table.n_max && usable(limit + 1)) ++limit;

    const auto q = specfun::poisson_weights(mean, limit);
    // suffix[k] = weighted tail beyond p = plain + k, terms up to limit, plus
    // the unweighted remainder beyond limit.
    const double remainder = poisson_tail(mean, limit);
    std::vector<double> suffix(static_cast<std::size_t>(limit - plain) + 1, remainder);
    for (int p = limit; p > plain; --p) {
        const double w = std::max(1.0, table.omega_n[p] * table.omega_n[p]);
        suffix[p - 1 - plain] = suffix[p - plain] + q[p] * w;
    }

    PoissonWindow window;
    window.plain_cutoff = plain;
    window.n_trunc = limit;
    window.weighted_certified = false;
    for (int n = plain; n <= limit; ++n) {
        if (suffix[n - plain] < epsilon) {
            window.n_trunc = n;
            window.weighted_certified = true;
            break;
        }
    }
    window.weights.assign(q.begin(), q.begin() + window.n_trunc + 1);
    window.tail_mass = poisson_tail(mean, window.n_trunc);
    window.weighted_tail = suffix[window.n_trunc - plain];
    return window;
}

double beta_sq(double omega_p) {
    require_positive_omega(omega_p, "beta_sq");
    return 2.0 * omega_p / (1.0 + omega_p);
}

std::complex<double> a_p_closed(double omega_p, double omega_t) {
    const double b2 = beta_sq(omega_p);
    const double z = (b2 - 1.0) * (b2 - 1.0);
    // |z| < 1 keeps the radicand in the right half-plane, away from the cut.
    const std::complex<double> radicand = 1.0 - z * std::polar(1.0, -2.0 * omega_p * omega_t);
    return b2 / (std::sqrt(omega_p) * std::sqrt(radicand));
}

std::complex<double> a_p_series(double omega_p, double omega_t, const OverlapTable& overlaps) {
    require_positive_omega(omega_p, "a_p_series");
    if (std::abs(overlaps.omega_p - omega_p) > 1e-15 * omega_p) {
        throw DomainError("a_p_series: overlap table built for Omega = " + std::to_string(overlaps.omega_p) +
                          ", asked for Omega = " + std::to_string(omega_p));
    }
    if (!(std::abs(overlaps.completeness_residual) < kSeriesCompleteness)) {
        throw DomainError("a_p_series: overlap table is incomplete (residual " +
                          std::to_string(overlaps.completeness_residual) + ")");
    }
    std::complex<double> sum = 0.0;
    for (std::size_t l = 0; l < overlaps.overlaps_sq.size(); ++l) {
        sum += overlaps.overlaps_sq[l] * std::polar(1.0, -omega_p * omega_t * static_cast<double>(l));
    }
    return sum;
}

std::vector<double> survival_probability(std::span<const double> tau, const PoissonWindow& window,
                                         const ModulationTable& table) {
    std::vector<double> p0(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) {
        const double omega_t = kTwoPi * tau[k];
        // Summed as the deficit from 1, so Omega = 1 terms contribute exactly 0.
        double deficit = 0.0;
        for (int p = 0; p <= window.n_trunc; ++p) {
            deficit += window.weights[p] * survival_deficit(table.omega_n[p], omega_t);
        }
        p0[k] = 1.0 - deficit;
    }
    return p0;
}

std::vector<double> survival_probability(const SimulationConfig& config, const ModulationTable& table) {
    const auto window = poisson_window(config.alpha_sq, config.epsilon, table);
    const auto tau = tau_grid(config);
    return survival_probability(tau, window, table);
}

std::vector<double> classical_probability(std::span<const double> tau, const NonlinearitySpec& spec,
                                          double alpha_sq) {
    const double w = omega_real(spec, alpha_sq);
    require_positive_omega(w, "classical_probability");
    const double b2 = beta_sq(w);
    const double z = (b2 - 1.0) * (b2 - 1.0);
    std::vector<double> pcl(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) {
        const double c = std::cos(2.0 * w * kTwoPi * tau[k]);
        pcl[k] = b2 * b2 / std::sqrt(w * w * (1.0 - 2.0 * z * c + z * z));
    }
    return pcl;
}

std::vector<double> classical_probability(const SimulationConfig& config) {
    const auto tau = tau_grid(config);
    return classical_probability(tau, config.spec, config.alpha_sq);
}

double period_of_classical(const SimulationConfig& config) {
    const double w = omega_real(config.spec, config.alpha_sq);
    require_positive_omega(w, "period_of_classical");
    return 0.5 / w;
}

CollapseRevival detect_collapse_revival(std::span<const double> tau, std::span<const double> p0) {
    if (tau.size() != p0.size()) throw DomainError("detect_collapse_revival: length mismatch");
    CollapseRevival r;
    if (p0.size() < 2) return r;

    std::size_t k_min = 1;
    for (std::size_t k = 2; k < p0.size(); ++k) {
        if (p0[k] < p0[k_min]) k_min = k;
    }
    r.min_value = p0[k_min];
    r.tau_at_min = tau[k_min];
    r.collapsed = r.min_value < CollapseRevival::kCollapseThreshold;

    const std::size_t last = p0.size() - 1;
    for (std::size_t k = k_min + 1; k <= last; ++k) {
        const bool peak = p0[k] >= p0[k - 1] && (k == last || p0[k] >= p0[k + 1]);
        if (peak && (!r.has_later_peak || p0[k] > r.revival_peak)) {
            r.has_later_peak = true;
            r.revival_peak = p0[k];
            r.tau_at_peak = tau[k];
        }
    }
    r.revived = r.has_later_peak && r.revival_peak >= r.min_value + CollapseRevival::kRevivalRise;
    return r;
}

const std::vector<double>* TimeSeries::column(Observable o) const {
    for (const auto& [name, values] : columns) {
        if (name == o) return &values;
    }
    return nullptr;
}

}  // namespace nlqs
