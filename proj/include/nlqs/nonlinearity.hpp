#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nlqs {

/// f(n) = 1, the ordinary harmonic oscillator.
struct Identity {};

/// Rai–Agarwal spring: Omega(n) = sqrt(1 + mu n).
struct RaiAgarwal {
    double mu;
};

/// q-deformed oscillator, f(n)^2 = sinh(lambda n) / (n sinh lambda).
struct QDeformed {
    double lambda;
};

/// Trapped-ion centre-of-mass motion with Lamb–Dicke parameter eta.
struct TrappedIon {
    double eta;
};

/// Arbitrary spectrum e_0..e_N with e_n = n f(n)^2 and e_0 = 0.
struct Spectrum {
    std::vector<double> energies;
};

enum class Kind { identity, rai_agarwal, q_deformed, trapped_ion, spectrum };

/// Tagged nonlinearity description. Each alternative carries exactly the
/// parameters of its kind; construct through the make_* helpers, which
/// validate them.
class NonlinearitySpec {
public:
    using Variant = std::variant<Identity, RaiAgarwal, QDeformed, TrappedIon, Spectrum>;

    NonlinearitySpec() = default;

    static NonlinearitySpec identity();
    static NonlinearitySpec rai_agarwal(double mu);
    static NonlinearitySpec q_deformed(double lambda);
    static NonlinearitySpec trapped_ion(double eta);
    static NonlinearitySpec spectrum(std::vector<double> energies);

    Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
    const Variant& value() const noexcept { return value_; }

    template <class T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&value_);
    }

private:
    explicit NonlinearitySpec(Variant v) : value_(std::move(v)) {}
    Variant value_{Identity{}};
};

std::string_view kind_name(Kind kind);
Kind parse_kind(std::string_view name);

/// Precomputed Omega(0..n_max). Entries where f(n) hit a pole are kept as
/// NaN with valid = false; construction never throws on them.
struct ModulationTable {
    std::vector<double> omega_n;
    std::vector<bool> valid;
    int n_max = 0;

    bool all_valid() const;
};

/// f(n) for n >= 1.
double eval_f(const NonlinearitySpec& spec, int n);

/// n f(n)^2, with the n = 0 value defined as exactly 0.
double n_f_squared(const NonlinearitySpec& spec, int n);

/// Omega(n) = (n+1) f^2(n+1) - n f^2(n).
double omega(const NonlinearitySpec& spec, int n);

/// Continuous extension of Omega for kinds with a closed form
/// (identity, rai_agarwal, q_deformed). Throws UnsupportedKindError otherwise.
double omega_real(const NonlinearitySpec& spec, double x);

bool has_real_extension(const NonlinearitySpec& spec) noexcept;

ModulationTable build_table(const NonlinearitySpec& spec, int n_max);

/// Largest n_max for which build_table can be called (INT_MAX unless the
/// kind is a finite spectrum).
int max_table_index(const NonlinearitySpec& spec) noexcept;

/// e_n = n f^2(n) for n = 0..n_last, the inverse of the spectrum kind.
std::vector<double> export_spectrum(const NonlinearitySpec& spec, int n_last);

/// One real per line, line order = n; '#' starts a comment, blank lines are
/// skipped. Errors carry the 1-based line number of the offending entry.
std::vector<double> read_spectrum(std::istream& in, const std::string& source_name = "<stream>");
std::vector<double> read_spectrum_file(const std::filesystem::path& path);

}  // namespace nlqs
