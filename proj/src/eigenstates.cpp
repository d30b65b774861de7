#include "nlqs/eigenstates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlqs/error.hpp"
#include "nlqs/specfun.hpp"

namespace nlqs {

namespace {

constexpr double kNeglectedOverlapMass = 1e-14;
constexpr int kMaxAutoLMax = 128;

}  // namespace

ModeParameters::ModeParameters(double omega_p, int p) : omega_(omega_p), alpha_(0.0), p_(p) {
    if (!std::isfinite(omega_p) || !(omega_p > 0.0)) {
        throw DomainError("ModeParameters: Omega(" + std::to_string(p) + ") = " + std::to_string(omega_p) +
                          " does not give a confining potential");
    }
    alpha_ = std::sqrt(omega_p);
}

double energy(const ModeParameters& mode, int n) {
    if (n < 0) throw DomainError("energy: n must be >= 0");
    return mode.omega() * (n + 0.5);
}

double psi(const ModeParameters& mode, int l, double x) {
    if (l < 0) throw DomainError("psi: l must be >= 0");
    const double y = mode.alpha() * x;
    const auto h = specfun::hermite_phys_scaled(l, y);
    if (h.mantissa == 0.0) return 0.0;
    const double log_norm =
        0.5 * (std::log(mode.alpha()) - 0.5 * std::log(std::numbers::pi) - l * std::numbers::ln2 -
               specfun::log_factorial(l));
    const double log_abs =
        std::log(std::abs(h.mantissa)) + h.exponent * std::numbers::ln2 + log_norm - 0.5 * y * y;
    return std::copysign(std::exp(log_abs), h.mantissa);
}

OverlapTable overlap_table(double omega_p, int l_max, int quad_order) {
    if (!std::isfinite(omega_p) || !(omega_p > 0.0)) {
        throw DomainError("overlap_table: Omega must be finite and > 0");
    }
    if (l_max < 0) throw DomainError("overlap_table: l_max must be >= 0");
    if (quad_order < std::max(1, 2 * l_max)) {
        throw DomainError("overlap_table: quad_order " + std::to_string(quad_order) + " < 2*l_max = " +
                          std::to_string(2 * l_max));
    }
    const auto rule = specfun::gauss_hermite(quad_order);

    // psi_l^p phi_0 carries e^{-(1+Omega)x^2/2}; with x = s u the rule's
    // e^{-u^2} absorbs it and the remaining factor is a degree-l polynomial.
    const double s = std::sqrt(2.0 / (1.0 + omega_p));
    const double y_per_u = std::sqrt(omega_p) * s;
    const double prefactor = s * std::sqrt(std::sqrt(omega_p / std::numbers::pi));
    const double h0 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

    std::vector<double> amplitude(static_cast<std::size_t>(l_max) + 1, 0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double y = y_per_u * rule.nodes[i];
        const double w = rule.weights[i];
        // Orthonormal Hermite recurrence, h_l = H_l / sqrt(sqrt(pi) 2^l l!).
        double prev = 0.0;
        double cur = h0;
        amplitude[0] += w * cur;
        for (int l = 0; l < l_max; ++l) {
            const double next =
                std::sqrt(2.0 / (l + 1)) * y * cur - std::sqrt(static_cast<double>(l) / (l + 1)) * prev;
            prev = cur;
            cur = next;
            amplitude[l + 1] += w * cur;
        }
    }

    OverlapTable table;
    table.omega_p = omega_p;
    table.overlaps_sq.resize(amplitude.size());
    double total = 0.0;
    for (std::size_t l = 0; l < amplitude.size(); ++l) {
        const double a = prefactor * amplitude[l];
        table.overlaps_sq[l] = std::min(1.0, a * a);
        total += table.overlaps_sq[l];
    }
    table.completeness_residual = 1.0 - total;
    return table;
}

int auto_l_max(double omega_p) {
    if (!std::isfinite(omega_p) || !(omega_p > 0.0)) {
        throw DomainError("auto_l_max: Omega must be finite and > 0");
    }
    const double ratio = (omega_p - 1.0) / (omega_p + 1.0);
    const double decay = ratio * ratio;
    if (decay < 1e-300) return 2;
    const double pairs = std::ceil(std::log(kNeglectedOverlapMass) / std::log(decay));
    return static_cast<int>(std::clamp(2.0 * pairs, 2.0, static_cast<double>(kMaxAutoLMax)));
}

int auto_quad_order(int l_max) { return std::clamp(2 * l_max, 2, 256); }

}  // namespace nlqs
