#include <doctest.h>

#include <cmath>

#include "qnl/asymptotic.hpp"

using namespace qnl;

TEST_SUITE_BEGIN("asymptotic");

TEST_CASE("collapse energy point values") {
    // escale = 1 at L = 1/2
    const ModelParams unit_escale(0.5, 0.5);
    REQUIRE(unit_escale.escale() == 1.0);
    CHECK(asymptotic::collapse_energy(0.5, unit_escale).energy ==
          doctest::Approx(16.0 * std::log(2.0)).epsilon(1e-12));

    ModelParams p9(0.9, 0.5);
    CHECK(asymptotic::collapse_energy(0.9, p9).energy ==
          doctest::Approx(-std::log(0.1) / 0.6561).epsilon(1e-12));
    CHECK(asymptotic::collapse_energy(0.9, p9).g_value == doctest::Approx(3.5095).epsilon(1e-4));
}

TEST_CASE("doubling L quarters the collapse energy at fixed eta") {
    const ModelParams a(0.7, 2.0), b(0.7, 4.0);
    const double ea = asymptotic::collapse_energy(0.7, a).energy;
    const double eb = asymptotic::collapse_energy(0.7, b).energy;
    CHECK(ea / eb == doctest::Approx(4.0).epsilon(1e-14));
    // energy * L^2 is L-independent
    CHECK(ea * a.L * a.L == doctest::Approx(eb * b.L * b.L).epsilon(1e-14));
}

TEST_CASE("eta = 1 diverges") {
    const ModelParams p(1.0, 1.0);
    CHECK_THROWS_AS(asymptotic::collapse_energy(1.0, p), std::domain_error);
}

TEST_CASE("universal minimizer") {
    const double em = asymptotic::eta_minimizer_asymptotic();
    CHECK(em == doctest::Approx(0.9034).epsilon(1.2e-3));
    CHECK(std::abs(em - 0.9) < 0.01);

    const ModelParams unit_escale(0.5, 0.5);
    const double gm = asymptotic::collapse_energy(em, unit_escale).g_value;
    CHECK(gm == doctest::Approx(3.509).epsilon(0.01 / 3.509));
    CHECK(gm < asymptotic::collapse_energy(0.85, unit_escale).g_value);
    CHECK(gm < asymptotic::collapse_energy(0.95, unit_escale).g_value);
}

TEST_CASE("g decreases then increases across the minimizer") {
    const ModelParams params(0.5, 0.5);
    const double em = asymptotic::eta_minimizer_asymptotic();
    double prev = asymptotic::collapse_energy(0.05, params).g_value;
    bool rising = false;
    for (double eta = 0.051; eta < 0.999; eta += 1e-3) {
        const double g = asymptotic::collapse_energy(eta, params).g_value;
        if (!rising) {
            if (g > prev) {
                // the turn must happen at the minimizer
                CHECK(std::abs(eta - em) < 2e-3);
                rising = true;
            }
        } else {
            CHECK(g >= prev);
        }
        prev = g;
    }
    CHECK(rising);
}

TEST_SUITE_END();
