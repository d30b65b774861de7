#pragma once

#include "nlqs/dynamics.hpp"
#include "nlqs/squeezing.hpp"

namespace nlqs {

/// Everything one run produces: the shared modulation table and Poisson
/// window, plus the requested observables on the tau grid.
struct SimulationResult {
    ModulationTable table;
    PoissonWindow window;
    TimeSeries series;
};

/// Builds the table once and evaluates the requested observables in the
/// canonical column order P0, Pcl, Sx, Sp. P0 is always included.
SimulationResult simulate(const SimulationConfig& config);

std::vector<std::pair<std::string, double>> spec_parameters(const NonlinearitySpec& spec);

}  // namespace nlqs
