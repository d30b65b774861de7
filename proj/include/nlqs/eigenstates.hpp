#pragma once

#include <vector>

namespace nlqs {

/// Oscillator of frequency omega * Omega(p) in units hbar = m = omega = 1.
class ModeParameters {
public:
    /// Throws DomainError unless omega_p is finite and > 0.
    explicit ModeParameters(double omega_p, int p = 0);

    double omega() const noexcept { return omega_; }
    /// Inverse length scale, alpha^2 = Omega(p).
    double alpha() const noexcept { return alpha_; }
    int p() const noexcept { return p_; }

private:
    double omega_;
    double alpha_;
    int p_;
};

/// |<psi_l^p|phi_0>|^2 for l = 0..l_max.
struct OverlapTable {
    double omega_p = 1.0;
    std::vector<double> overlaps_sq;
    double completeness_residual = 0.0;  // 1 - sum(overlaps_sq)
};

/// E_n^p = Omega(p) (n + 1/2), in units of hbar omega.
double energy(const ModeParameters& mode, int n);

/// Normalized eigenfunction psi_l^p(x).
double psi(const ModeParameters& mode, int l, double x);

/// Overlaps of the frequency-Omega eigenbasis with the unit-frequency ground
/// state, by Gauss–Hermite quadrature. Requires quad_order >= 2 l_max.
OverlapTable overlap_table(double omega_p, int l_max, int quad_order);

/// Cutoff l_max at which the neglected overlap mass is below ~1e-14,
/// from the decay ratio ((Omega-1)/(Omega+1))^2 of successive even terms.
/// Capped so that 2 l_max stays within the largest quadrature order.
int auto_l_max(double omega_p);
int auto_quad_order(int l_max);

}  // namespace nlqs
