#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nlqs/dynamics.hpp"

namespace nlqs {

/// Normalized quadrature variances of the oscillator, Sx = Sp = 1 at tau = 0.
struct SqueezingSeries {
    std::vector<double> tau;
    std::vector<double> sx;
    std::vector<double> sp;
    int n_trunc = 0;
};

SqueezingSeries squeezing_series(std::span<const double> tau, const PoissonWindow& window,
                                 const ModulationTable& table);
SqueezingSeries squeezing_series(const SimulationConfig& config, const ModulationTable& table);

/// Classical phase-space rotation of (x0, p0) = (1, 0) at frequency Omega,
/// m = omega = 1. Returns (x(t), p(t)) for phase omega_t.
std::pair<double, double> heisenberg_xp_check(double omega_n, double omega_t);

/// Samples where both quadratures sit strictly below 1 at once.
struct SimultaneousSqueezing {
    int count = 0;
    double first_tau = 0.0;
    double worst_depth = 0.0;  // max over offending samples of min(1 - Sx, 1 - Sp)
};

SimultaneousSqueezing find_simultaneous_squeezing(const SqueezingSeries& series, double tolerance = 1e-12);

}  // namespace nlqs
