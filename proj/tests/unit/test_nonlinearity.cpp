#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nlqs/error.hpp"
#include "nlqs/nonlinearity.hpp"
#include "nlqs/specfun.hpp"
#include "oracles.hpp"

using namespace nlqs;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("eval_f examples") {
    CHECK(eval_f(NonlinearitySpec::identity(), 7) == 1.0);
    for (int n : {1, 3, 40}) {
        CHECK(eval_f(NonlinearitySpec::q_deformed(1e-9), n) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(eval_f(NonlinearitySpec::rai_agarwal(0.1), 2) ==
          doctest::Approx(std::sqrt((1.0 + std::sqrt(1.1)) / 2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(eval_f(NonlinearitySpec::identity(), 0), DomainError);
}

TEST_CASE("omega examples") {
    for (int n : {0, 1, 17, 500}) CHECK(omega(NonlinearitySpec::identity(), n) == 1.0);
    CHECK(omega(NonlinearitySpec::rai_agarwal(0.1), 3) == doctest::Approx(std::sqrt(1.3)).epsilon(1e-13));
    CHECK(omega(NonlinearitySpec::q_deformed(0.15), 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("omega_real examples") {
    CHECK(omega_real(NonlinearitySpec::identity(), 6.25) == 1.0);
    CHECK(omega_real(NonlinearitySpec::q_deformed(0.15), 4.0) ==
          doctest::Approx(std::cosh(0.675) / std::cosh(0.075)).epsilon(1e-15));
    CHECK(omega_real(NonlinearitySpec::q_deformed(0.15), 4.0) == doctest::Approx(1.233125).epsilon(1e-6));
    CHECK(omega_real(NonlinearitySpec::rai_agarwal(1.0), 0.0) == 1.0);
    CHECK_THROWS_AS(omega_real(NonlinearitySpec::trapped_ion(0.2), 1.0), UnsupportedKindError);
    CHECK_THROWS_AS(omega_real(NonlinearitySpec::spectrum({0.0, 1.0, 2.0}), 1.0), UnsupportedKindError);
    CHECK_FALSE(has_real_extension(NonlinearitySpec::trapped_ion(0.2)));
    CHECK(has_real_extension(NonlinearitySpec::q_deformed(0.2)));
}

TEST_CASE("omega_real agrees with omega at integers") {
    for (double lambda : {0.05, 0.15, 0.3}) {
        const auto spec = NonlinearitySpec::q_deformed(lambda);
        for (int n = 0; n <= 60; ++n) CHECK(rel_diff(omega_real(spec, n), omega(spec, n)) < 1e-12);
    }
    for (double mu : {0.01, 0.1, 1.0}) {
        const auto spec = NonlinearitySpec::rai_agarwal(mu);
        for (int n = 0; n <= 60; ++n) CHECK(rel_diff(omega_real(spec, n), omega(spec, n)) < 1e-12);
    }
}

TEST_CASE("build_table examples") {
    const auto id = build_table(NonlinearitySpec::identity(), 5);
    CHECK(id.n_max == 5);
    CHECK(id.all_valid());
    for (double w : id.omega_n) CHECK(w == 1.0);

    std::vector<double> e(52, 0.0);
    for (int n = 1; n < 52; ++n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::sqrt(1.0 + 0.1 * j);
        e[n] = s;
    }
    const auto from_spectrum = build_table(NonlinearitySpec::spectrum(e), 50);
    const auto direct = build_table(NonlinearitySpec::rai_agarwal(0.1), 50);
    for (int n = 0; n <= 50; ++n) CHECK(std::abs(from_spectrum.omega_n[n] - direct.omega_n[n]) < 1e-12);

    const auto ion = build_table(NonlinearitySpec::trapped_ion(0.2), 30);
    CHECK(ion.all_valid());
    for (double w : ion.omega_n) CHECK(std::isfinite(w));
}

TEST_CASE("telescoping sum of omega") {
    const std::vector<NonlinearitySpec> specs{
        NonlinearitySpec::identity(),          NonlinearitySpec::rai_agarwal(0.1), NonlinearitySpec::rai_agarwal(1.0),
        NonlinearitySpec::q_deformed(0.15),    NonlinearitySpec::q_deformed(0.4),  NonlinearitySpec::trapped_ion(0.2),
        NonlinearitySpec::trapped_ion(0.35),   NonlinearitySpec::spectrum({0.0, 0.7, 2.5, 2.9, 6.0, 6.1, 9.4}),
    };
    for (const auto& spec : specs) {
        CAPTURE(kind_name(spec.kind()));
        const int last = std::min(80, max_table_index(spec));
        // Near a trapped-ion pole the partial sums pass through large values
        // and later cancel, so the error is measured against the largest
        // magnitude seen so far.
        double running = 0.0;
        double scale = 0.0;
        for (int n = 0; n <= last; ++n) {
            running += omega(spec, n);
            const double target = (n + 1) * std::pow(eval_f(spec, n + 1), 2);
            scale = std::max(scale, std::abs(target));
            CHECK(std::abs(running - target) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("spectrum round-trip reproduces the table") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        const bool use_q = trial % 2 == 0;
        const auto spec = use_q ? NonlinearitySpec::q_deformed(rng.uniform(0.01, 0.3))
                                : NonlinearitySpec::rai_agarwal(rng.uniform(0.01, 1.0));
        const int n_max = 100;
        std::vector<double> e(n_max + 2, 0.0);
        for (int n = 1; n <= n_max + 1; ++n) e[n] = n * std::pow(eval_f(spec, n), 2);
        const auto imported = build_table(NonlinearitySpec::spectrum(e), n_max);
        const auto direct = build_table(spec, n_max);
        for (int n = 0; n <= n_max; ++n) {
            CHECK(std::abs(imported.omega_n[n] - direct.omega_n[n]) <= 1e-12 * std::max(1.0, direct.omega_n[n]));
        }
        const auto exported = export_spectrum(spec, n_max + 1);
        for (int n = 0; n <= n_max + 1; ++n) CHECK(rel_diff(exported[n], e[n]) < 1e-14);
    }
}

TEST_CASE("rai_agarwal closure") {
    for (double mu : {0.01, 0.1, 1.0}) {
        const auto spec = NonlinearitySpec::rai_agarwal(mu);
        for (int n = 0; n <= 200; ++n) CHECK(std::abs(omega(spec, n) - std::sqrt(1.0 + mu * n)) < 1e-12);
    }
}

TEST_CASE("rai_agarwal finite sum equals the zeta form") {
    for (double mu : {0.1, 1.0}) {
        const auto spec = NonlinearitySpec::rai_agarwal(mu);
        const double head = specfun::hurwitz_zeta_neg_half(1.0 / mu);
        for (int n = 1; n <= 100; ++n) {
            const double zeta_form = std::sqrt(mu) * (head - specfun::hurwitz_zeta_neg_half(n + 1.0 / mu));
            CHECK(std::abs(n_f_squared(spec, n) - zeta_form) < 1e-8);
        }
    }
}

TEST_CASE("q_deformed omega is increasing and at least one") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = NonlinearitySpec::q_deformed(rng.uniform(1e-3, 0.5));
        double previous = omega(spec, 0);
        CHECK(previous >= 1.0 - 1e-15);
        for (int n = 1; n <= 100; ++n) {
            const double w = omega(spec, n);
            CHECK(w > previous);
            CHECK(w >= 1.0);
            previous = w;
        }
    }
}

TEST_CASE("trapped_ion pole is recorded, not thrown by build_table") {
    // eta = 1: L_1^0(1) = 0, so f(2) diverges and Omega(1), Omega(2) depend on it.
    const auto spec = NonlinearitySpec::trapped_ion(1.0);
    CHECK_THROWS_AS(eval_f(spec, 2), SingularityError);
    CHECK_THROWS_AS(omega(spec, 1), SingularityError);
    const auto table = build_table(spec, 4);
    CHECK(table.valid[0]);
    CHECK_FALSE(table.valid[1]);
    CHECK_FALSE(table.valid[2]);
    CHECK(std::isnan(table.omega_n[1]));
    CHECK(table.valid[3]);
    CHECK_FALSE(table.all_valid());
}

TEST_CASE("trapped_ion matches the Laguerre ratio") {
    const double x = 0.04;
    // L_0^1 = 1, L_0^0 = 1; L_1^1 = 2 - x, L_1^0 = 1 - x.
    const auto spec = NonlinearitySpec::trapped_ion(0.2);
    CHECK(eval_f(spec, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_f(spec, 2) == doctest::Approx((2 - x) / (2 * (1 - x))).epsilon(1e-15));
    CHECK(omega(spec, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(omega(spec, 1) == doctest::Approx(2 * std::pow((2 - x) / (2 * (1 - x)), 2) - 1).epsilon(1e-14));
}

TEST_CASE("spec construction errors") {
    CHECK_THROWS_AS(NonlinearitySpec::q_deformed(0.0), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::q_deformed(-0.1), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::trapped_ion(-0.1), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::rai_agarwal(std::nan("")), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::spectrum({0.0}), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::spectrum({0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec::spectrum({0.0, -1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(parse_kind("harmonic"), DomainError);
    CHECK(parse_kind("q_deformed") == Kind::q_deformed);

    const auto short_spectrum = NonlinearitySpec::spectrum({0.0, 1.0, 2.5});
    CHECK(max_table_index(short_spectrum) == 1);
    CHECK_NOTHROW(build_table(short_spectrum, 1));
    CHECK_THROWS_AS(build_table(short_spectrum, 2), DomainError);

    // Negative mu makes 1 + mu j negative for large j.
    CHECK_THROWS_AS(n_f_squared(NonlinearitySpec::rai_agarwal(-0.5), 4), SingularityError);
}

TEST_CASE("read_spectrum") {
    std::istringstream good("# energies\n0\n\n1.0  \n2.5 # inline comment\n4\n");
    CHECK(read_spectrum(good) == std::vector<double>{0.0, 1.0, 2.5, 4.0});

    auto error_line = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_spectrum(in, "s.txt");
        } catch (const ConfigError& e) {
            CHECK(e.source() == "s.txt");
            return e.line();
        }
        return -1;
    };
    CHECK(error_line("0\n1\nbanana\n") == 3);
    CHECK(error_line("# c\n0\n1\n-2\n") == 4);
    CHECK(error_line("\n0.5\n1\n") == 2);
    CHECK(error_line("0\n1 2\n") == 2);
    CHECK(error_line("0\n") != -1);
    CHECK_THROWS_AS(read_spectrum_file("/nonexistent/spectrum.txt"), ConfigError);
}
