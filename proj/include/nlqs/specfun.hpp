#pragma once

#include <vector>

namespace nlqs::specfun {

/// Gauss–Hermite rule for weight e^{-x^2}. Nodes ascending and symmetric.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
/// Plain doubles overflow once |H_n(x)| > 1e308; use hermite_phys_scaled
/// for large n|x|.
double hermite_phys(int n, double x);

/// H_n(x) = mantissa * 2^exponent, with the recurrence renormalized as it goes.
struct ScaledValue {
    double mantissa;
    long exponent;
};
ScaledValue hermite_phys_scaled(int n, double x);

/// Generalized Laguerre polynomial L_n^m(x), forward recurrence in n.
double laguerre_gen(int n, int m, double x);

/// Hurwitz zeta at s = -1/2, i.e. the regularized sum over k of sqrt(a + k).
/// Throws DomainError for a <= 0.
double hurwitz_zeta_neg_half(double a);

/// Golub–Welsch eigenvalues, Newton-polished, with Christoffel weights.
/// Valid orders are 1..256; anything else throws DomainError.
QuadratureRule gauss_hermite(int order);

/// Q(p) = mean^p e^{-mean} / p! for p = 0..n_max, evaluated in log space.
std::vector<double> poisson_weights(double mean, int n_max);

double log_factorial(int n);

}  // namespace nlqs::specfun
