#include "nlqs/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nlqs/error.hpp"

namespace nlqs::specfun {

namespace {

constexpr int kMaxQuadratureOrder = 256;
constexpr int kRescaleBits = 512;
const double kRescaleThreshold = std::ldexp(1.0, kRescaleBits);

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
// diag is overwritten with the eigenvalues (unsorted); off[i] couples i and i+1.
void tridiagonal_eigenvalues(std::vector<double>& diag, std::vector<double> off) {
    const int n = static_cast<int>(diag.size());
    off.resize(n, 0.0);
    off[n - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 64) {
                throw Error("tridiagonal eigensolver failed to converge");
            }
            double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            bool deflated = false;
            for (; i >= l; --i) {
                const double f = s * off[i];
                const double b = c * off[i];
                r = std::hypot(f, g);
                off[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        } while (m != l);
    }
}

// Orthonormal Hermite functions without the Gaussian factor:
// h_k = H_k / sqrt(sqrt(pi) 2^k k!). Returns {h_{n-1}, h_n}.
std::pair<double, double> orthonormal_hermite_pair(int n, double x) {
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
    for (int k = 0; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return {prev, cur};
}

}  // namespace

double hermite_phys(int n, double x) {
    if (n < 0) throw DomainError("hermite_phys: negative order");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

ScaledValue hermite_phys_scaled(int n, double x) {
    if (n < 0) throw DomainError("hermite_phys_scaled: negative order");
    if (n == 0) return {1.0, 0};
    double prev = 1.0;
    double cur = 2.0 * x;
    long exponent = 0;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleThreshold) {
            cur = std::ldexp(cur, -kRescaleBits);
            prev = std::ldexp(prev, -kRescaleBits);
            exponent += kRescaleBits;
        }
    }
    return {cur, exponent};
}

double laguerre_gen(int n, int m, double x) {
    if (n < 0 || m < 0) throw DomainError("laguerre_gen: negative index");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + m - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + m - x) * cur - (k + m) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double hurwitz_zeta_neg_half(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("hurwitz_zeta_neg_half: requires a > 0, got " + std::to_string(a));
    }
    constexpr double s = -0.5;
    const int terms = std::max(16, static_cast<int>(std::ceil(a)) + 16);

    double sum = 0.0;
    for (int k = 0; k < terms; ++k) sum += std::sqrt(a + k);

    // Euler–Maclaurin tail from a + terms onward, Bernoulli terms B2, B4, B6.
    const double x = a + terms;
    const double sqrt_x = std::sqrt(x);
    double tail = x * sqrt_x / (s - 1.0) + 0.5 * sqrt_x;
    double rising = s;                  // s (s+1) ... (s+2j-2)
    double power = sqrt_x / x;          // x^{-s-2j+1}
    constexpr double bernoulli_over_factorial[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};
    for (int j = 0; j < 3; ++j) {
        tail += bernoulli_over_factorial[j] * rising * power;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        power /= x * x;
    }
    return sum + tail;
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > kMaxQuadratureOrder) {
        throw DomainError("gauss_hermite: order must be in [1, 256], got " + std::to_string(order));
    }
    std::vector<double> diag(order, 0.0);
    std::vector<double> off(order, 0.0);
    for (int k = 1; k < order; ++k) off[k - 1] = std::sqrt(0.5 * k);
    tridiagonal_eigenvalues(diag, off);
    std::sort(diag.begin(), diag.end());

    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = diag[i];
        for (int it = 0; it < 8; ++it) {
            const auto [lower, value] = orthonormal_hermite_pair(order, x);
            const double step = value / (std::sqrt(2.0 * order) * lower);
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        const double lower = orthonormal_hermite_pair(order, x).first;
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / (order * lower * lower);
    }

    // Enforce exact symmetry.
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    return std::lgamma(n + 1.0);
}

std::vector<double> poisson_weights(double mean, int n_max) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw DomainError("poisson_weights: mean must be finite and >= 0");
    }
    if (n_max < 0) throw DomainError("poisson_weights: n_max must be >= 0");
    std::vector<double> q(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (mean == 0.0) {
        q[0] = 1.0;
        return q;
    }
    const double log_mean = std::log(mean);
    for (int p = 0; p <= n_max; ++p) {
        q[p] = std::min(1.0, std::exp(p * log_mean - mean - log_factorial(p)));
    }
    return q;
}

}  // namespace nlqs::specfun
