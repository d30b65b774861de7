#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlqs/eigenstates.hpp"
#include "nlqs/nonlinearity.hpp"

namespace nlqs {

enum class Observable { P0, Pcl, Sx, Sp };

std::string_view observable_name(Observable o);
Observable parse_observable(std::string_view name);

/// One simulation run. Time is tau = omega t / (2 pi) on a uniform grid of
/// steps + 1 samples from 0 to tau_max inclusive.
struct SimulationConfig {
    NonlinearitySpec spec;
    double alpha_sq = 0.0;  // mean excitation |alpha|^2 of the modulating source
    double tau_max = 60.0;
    int steps = 6000;
    double epsilon = 1e-10;  // Poisson tail mass allowed outside the window
    std::optional<int> l_max;
    std::optional<int> quad_order;
    std::vector<Observable> observables{Observable::P0};

    /// Throws DomainError on any out-of-range field.
    void validate() const;
};

std::vector<double> tau_grid(const SimulationConfig& config);

/// Retained excitations p = 0..n_trunc of the coherent modulating source.
///
/// n_trunc is the smallest N at or above the plain cutoff (tail mass below
/// epsilon) for which the tail weighted by max(1, Omega(p)^2) is also below
/// epsilon. The weight bounds the per-term contribution of every observable,
/// so the cutoff certifies Sp as well as P0 and Sx.
struct PoissonWindow {
    int n_trunc = 0;
    int plain_cutoff = 0;         // smallest N with unweighted tail < epsilon
    std::vector<double> weights;  // Q(0..n_trunc)
    double tail_mass = 0.0;       // sum_{p > n_trunc} Q(p)
    double weighted_tail = 0.0;   // sum_{p > n_trunc} Q(p) max(1, Omega^2)
    bool weighted_certified = true;
};

/// sum_{p > n} Q(p).
double poisson_tail(double mean, int n);

/// Smallest N with poisson_tail(mean, N) < epsilon.
int poisson_cutoff(double mean, double epsilon);

/// Table size needed by poisson_window: far enough that the plain tail is
/// negligible against epsilon, clamped for finite spectra.
int window_table_extent(double mean, double epsilon, const NonlinearitySpec& spec);

/// Throws SingularityError if an entry inside the plain cutoff is invalid or
/// non-positive, DomainError if the table is too short.
PoissonWindow poisson_window(double mean, double epsilon, const ModulationTable& table);

/// beta_p^2 = 2 Omega / (1 + Omega).
double beta_sq(double omega_p);

/// Closed-form A_p at dimensionless phase omega_t = omega t.
std::complex<double> a_p_closed(double omega_p, double omega_t);

/// A_p as the overlap series; the table must belong to omega_p and be
/// complete to 1e-8.
std::complex<double> a_p_series(double omega_p, double omega_t, const OverlapTable& overlaps);

std::vector<double> survival_probability(std::span<const double> tau, const PoissonWindow& window,
                                         const ModulationTable& table);
std::vector<double> survival_probability(const SimulationConfig& config, const ModulationTable& table);

/// Pcl(tau) with the source excitation replaced by its mean |alpha|^2.
/// Throws UnsupportedKindError for kinds without omega_real.
std::vector<double> classical_probability(std::span<const double> tau, const NonlinearitySpec& spec,
                                          double alpha_sq);
std::vector<double> classical_probability(const SimulationConfig& config);

/// Period of Pcl on the tau axis, 1 / (2 Omega(|alpha|^2)).
double period_of_classical(const SimulationConfig& config);

/// Collapse: min P0 over tau in (0, tau_max] below 0.5.
/// Revival: a later local maximum at least 0.2 above that minimum.
struct CollapseRevival {
    static constexpr double kCollapseThreshold = 0.5;
    static constexpr double kRevivalRise = 0.2;

    double min_value = 1.0;
    double tau_at_min = 0.0;
    double revival_peak = 0.0;
    double tau_at_peak = 0.0;
    bool has_later_peak = false;
    bool collapsed = false;
    bool revived = false;

    bool detected() const noexcept { return collapsed && revived; }
};

CollapseRevival detect_collapse_revival(std::span<const double> tau, std::span<const double> p0);

struct TimeSeries {
    std::vector<double> tau;
    std::vector<std::pair<Observable, std::vector<double>>> columns;
    std::string kind;
    std::vector<std::pair<std::string, double>> parameters;
    int n_trunc = 0;

    const std::vector<double>* column(Observable o) const;
};

}  // namespace nlqs
