#include "nlqs/nonlinearity.hpp"

#include <array>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>

#include "nlqs/error.hpp"
#include "nlqs/specfun.hpp"

namespace nlqs {

namespace {

constexpr double kLaguerrePoleThreshold = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x) {
    if (x < 20.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

double q_deformed_n_f_squared(double lambda, int n) {
    const double arg = lambda * n;
    if (arg < 700.0) return std::sinh(arg) / std::sinh(lambda);
    return std::exp(log_sinh(arg) - log_sinh(lambda));
}

double rai_agarwal_n_f_squared(double mu, int n) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double radicand = 1.0 + mu * j;
        if (radicand < 0.0) {
            throw SingularityError(n, "rai_agarwal: 1 + mu*j < 0 at j = " + std::to_string(j) +
                                          " (frequency becomes imaginary)");
        }
        sum += std::sqrt(radicand);
    }
    return sum;
}

std::array<double, 2> trapped_ion_laguerre(double eta, int n) {
    const double x = eta * eta;
    const double l1 = specfun::laguerre_gen(n - 1, 1, x);
    const double l0 = specfun::laguerre_gen(n - 1, 0, x);
    if (std::abs(l0) < kLaguerrePoleThreshold) {
        throw SingularityError(n, "trapped_ion: L_" + std::to_string(n - 1) +
                                      "^0(eta^2) vanishes, f(" + std::to_string(n) + ") is singular");
    }
    return {l1, l0};
}

const std::vector<double>& checked_energies(const Spectrum& s, int n) {
    if (n >= static_cast<int>(s.energies.size())) {
        throw DomainError("spectrum: e_" + std::to_string(n) + " requested but only e_0..e_" +
                          std::to_string(s.energies.size() - 1) + " supplied");
    }
    if (s.energies[n] < 0.0) throw DomainError("spectrum: e_" + std::to_string(n) + " < 0");
    return s.energies;
}

}  // namespace

NonlinearitySpec NonlinearitySpec::identity() { return NonlinearitySpec(Identity{}); }

NonlinearitySpec NonlinearitySpec::rai_agarwal(double mu) {
    require_finite(mu, "mu");
    return NonlinearitySpec(RaiAgarwal{mu});
}

NonlinearitySpec NonlinearitySpec::q_deformed(double lambda) {
    require_finite(lambda, "lambda");
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    return NonlinearitySpec(QDeformed{lambda});
}

NonlinearitySpec NonlinearitySpec::trapped_ion(double eta) {
    require_finite(eta, "eta");
    if (eta < 0.0) throw DomainError("eta must be >= 0");
    return NonlinearitySpec(TrappedIon{eta});
}

NonlinearitySpec NonlinearitySpec::spectrum(std::vector<double> energies) {
    if (energies.size() < 2) throw DomainError("spectrum needs at least e_0 and e_1");
    if (energies[0] != 0.0) throw DomainError("spectrum requires e_0 = 0");
    for (std::size_t n = 0; n < energies.size(); ++n) {
        if (!std::isfinite(energies[n]) || energies[n] < 0.0) {
            throw DomainError("spectrum: e_" + std::to_string(n) + " must be finite and >= 0");
        }
    }
    return NonlinearitySpec(Spectrum{std::move(energies)});
}

std::string_view kind_name(Kind kind) {
    switch (kind) {
        case Kind::identity: return "identity";
        case Kind::rai_agarwal: return "rai_agarwal";
        case Kind::q_deformed: return "q_deformed";
        case Kind::trapped_ion: return "trapped_ion";
        case Kind::spectrum: return "spectrum";
    }
    return "unknown";
}

Kind parse_kind(std::string_view name) {
    for (Kind k : {Kind::identity, Kind::rai_agarwal, Kind::q_deformed, Kind::trapped_ion, Kind::spectrum}) {
        if (kind_name(k) == name) return k;
    }
    throw DomainError("unknown nonlinearity kind '" + std::string(name) + "'");
}

bool ModulationTable::all_valid() const {
    for (bool v : valid) {
        if (!v) return false;
    }
    return true;
}

double eval_f(const NonlinearitySpec& spec, int n) {
    if (n < 1) throw DomainError("eval_f: n must be >= 1");
    return std::visit(
        overloaded{
            [](const Identity&) { return 1.0; },
            [n](const RaiAgarwal& ra) { return std::sqrt(rai_agarwal_n_f_squared(ra.mu, n) / n); },
            [n](const QDeformed& q) { return std::sqrt(q_deformed_n_f_squared(q.lambda, n) / n); },
            [n](const TrappedIon& ti) {
                const auto [l1, l0] = trapped_ion_laguerre(ti.eta, n);
                return l1 / (n * l0);
            },
            [n](const Spectrum& s) { return std::sqrt(checked_energies(s, n)[n] / n); },
        },
        spec.value());
}

double n_f_squared(const NonlinearitySpec& spec, int n) {
    if (n < 0) throw DomainError("n_f_squared: n must be >= 0");
    if (n == 0) return 0.0;
    return std::visit(
        overloaded{
            [n](const Identity&) { return static_cast<double>(n); },
            [n](const RaiAgarwal& ra) { return rai_agarwal_n_f_squared(ra.mu, n); },
            [n](const QDeformed& q) { return q_deformed_n_f_squared(q.lambda, n); },
            [n](const TrappedIon& ti) {
                const auto [l1, l0] = trapped_ion_laguerre(ti.eta, n);
                return l1 * l1 / (n * l0 * l0);
            },
            [n](const Spectrum& s) { return checked_energies(s, n)[n]; },
        },
        spec.value());
}

double omega(const NonlinearitySpec& spec, int n) {
    if (n < 0) throw DomainError("omega: n must be >= 0");
    if (spec.kind() == Kind::identity) return 1.0;
    return n_f_squared(spec, n + 1) - n_f_squared(spec, n);
}

bool has_real_extension(const NonlinearitySpec& spec) noexcept {
    const Kind k = spec.kind();
    return k == Kind::identity || k == Kind::rai_agarwal || k == Kind::q_deformed;
}

double omega_real(const NonlinearitySpec& spec, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("omega_real: x must be finite and >= 0");
    return std::visit(
        overloaded{
            [](const Identity&) { return 1.0; },
            [x](const RaiAgarwal& ra) {
                const double radicand = 1.0 + ra.mu * x;
                if (radicand < 0.0) throw DomainError("omega_real: 1 + mu*x < 0");
                return std::sqrt(radicand);
            },
            [x](const QDeformed& q) {
                return std::cosh(0.5 * q.lambda * (2.0 * x + 1.0)) / std::cosh(0.5 * q.lambda);
            },
            [](const TrappedIon&) -> double {
                throw UnsupportedKindError("trapped_ion has no real-argument Omega extension");
            },
            [](const Spectrum&) -> double {
                throw UnsupportedKindError("spectrum has no real-argument Omega extension");
            },
        },
        spec.value());
}

int max_table_index(const NonlinearitySpec& spec) noexcept {
    if (const auto* s = spec.get_if<Spectrum>()) return static_cast<int>(s->energies.size()) - 2;
    return INT_MAX - 1;
}

ModulationTable build_table(const NonlinearitySpec& spec, int n_max) {
    if (n_max < 0) throw DomainError("build_table: n_max must be >= 0");
    if (n_max > max_table_index(spec)) {
        throw DomainError("build_table: spectrum supplies e_0..e_" + std::to_string(max_table_index(spec) + 1) +
                          ", table up to n = " + std::to_string(n_max) + " needs e_" + std::to_string(n_max + 1));
    }
    ModulationTable table;
    table.n_max = n_max;
    table.omega_n.assign(static_cast<std::size_t>(n_max) + 1, std::numeric_limits<double>::quiet_NaN());
    table.valid.assign(static_cast<std::size_t>(n_max) + 1, false);

    // Walk n f^2(n) once so each entry costs one evaluation.
    double lower = 0.0;
    bool lower_ok = true;
    for (int n = 0; n <= n_max; ++n) {
        double upper = 0.0;
        bool upper_ok = true;
        try {
            upper = n_f_squared(spec, n + 1);
        } catch (const SingularityError&) {
            upper_ok = false;
        }
        if (lower_ok && upper_ok) {
            const double w = spec.kind() == Kind::identity ? 1.0 : upper - lower;
            table.omega_n[n] = w;
            table.valid[n] = std::isfinite(w) && w != 0.0;
        }
        lower = upper;
        lower_ok = upper_ok;
    }
    return table;
}

std::vector<double> export_spectrum(const NonlinearitySpec& spec, int n_last) {
    if (n_last < 1) throw DomainError("export_spectrum: n_last must be >= 1");
    std::vector<double> e(static_cast<std::size_t>(n_last) + 1);
    for (int n = 0; n <= n_last; ++n) e[n] = n_f_squared(spec, n);
    return e;
}

std::vector<double> read_spectrum(std::istream& in, const std::string& source_name) {
    std::vector<double> energies;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);

        errno = 0;
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(value)) {
            throw ConfigError(source_name, line_no, "expected one finite real per line, got '" + token + "'");
        }
        if (energies.empty() && value != 0.0) {
            throw ConfigError(source_name, line_no, "first energy e_0 must be 0");
        }
        if (value < 0.0) {
            throw ConfigError(source_name, line_no,
                              "e_" + std::to_string(energies.size()) + " < 0 makes f(n) imaginary");
        }
        energies.push_back(value);
    }
    if (energies.size() < 2) throw ConfigError(source_name, 0, "spectrum needs at least e_0 and e_1");
    return energies;
}

std::vector<double> read_spectrum_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "cannot open spectrum file");
    return read_spectrum(in, path.string());
}

}  // namespace nlqs
