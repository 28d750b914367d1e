#include <doctest.h>

#include <cmath>

#include "qnl/nonlin.hpp"
#include "qnl/perturb.hpp"

using namespace qnl;
using perturb::GridPolicy;

TEST_SUITE_BEGIN("perturb");

TEST_CASE("eta shape factor") {
    CHECK(perturb::eta_shape_factor(0.25) == 0.0);
    CHECK(perturb::eta_shape_factor(0.5) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(perturb::eta_shape_factor(1.0), std::invalid_argument);
    CHECK_THROWS_AS(perturb::eta_shape_factor(0.0), std::invalid_argument);
}

TEST_CASE("perturbative eta minimizer") {
    const double em = perturb::eta_minimizer_perturbative();
    const double closed_form = (7.0 + std::sqrt(33.0)) / 16.0;
    CHECK(std::abs(em - closed_form) < 1e-8);
    CHECK(std::abs(em - 0.80) < 0.01);
    CHECK(perturb::eta_shape_factor(em) == doctest::Approx(-0.8800862965).epsilon(1e-8));
    for (double eta = 0.1; eta < 0.95; eta += 0.1)
        CHECK(perturb::eta_shape_factor(em) <= perturb::eta_shape_factor(eta));
}

TEST_CASE("first_order_shift: constant state on a periodic grid") {
    const ModelParams params(0.5, 1.0);
    const auto g = make_grid(6.0, 0.5, 1.0, 0.5 / 25.0, Boundary::Periodic);
    spectra::EigenPair state;
    state.n = 0;
    state.energy = 0.0;
    state.psi.grid = g;
    state.psi.values.assign(g.count, 1.0);
    normalize(state.psi);
    CHECK(std::abs(perturb::first_order_shift(state, params)) < 1e-12);
}

TEST_CASE("first_order_shift: refuses under-resolved grids") {
    const ModelParams params(0.5, 1e-3);
    const auto g = make_grid(7.0, 0.5, 1e-3, 0.5e-3 / 10.0, Boundary::PaddedFloor);
    CHECK(g.dx > params.shift_length() / 20.0);
    CHECK_THROWS_AS(perturb::first_order_shift(0, params, g, Harmonic{1.0}),
                    std::invalid_argument);
}

TEST_CASE("first_order_shift: L-scaling split by nodal structure") {
    ModelParams base;
    const auto family = perturb::harmonic_family(base, 5);
    GridPolicy policy;
    policy.cells_per_shift = 40.0;

    auto shift_at = [&](int n, double L) {
        ModelParams params(0.5, L);
        const auto grid = make_grid(family.halfwidth + std::sqrt(2.0 * n + 1.0), 0.5, L,
                                    0.5 * L / policy.cells_per_shift, Boundary::PaddedFloor);
        return perturb::first_order_shift(n, params, grid, Harmonic{1.0});
    };

    SUBCASE("node-free n = 0: deltaE(L)/deltaE(L/2) -> 4") {
        const double r = shift_at(0, 2e-3) / shift_at(0, 1e-3);
        CHECK(r == doctest::Approx(4.0).epsilon(0.05));
    }
    SUBCASE("nodal n = 5: deltaE(L)/deltaE(L/2) -> 2") {
        const double r = shift_at(5, 2e-3) / shift_at(5, 1e-3);
        CHECK(r == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("first_order_shift equals total_energy minus the linear value") {
    // shared-quadrature identity; residual is only the O(dx^2) linear-part
    // discretization, bounded by dx^2 (2n^2+2n+1)/32 per state
    ModelParams base;
    const auto family = perturb::harmonic_family(base, 5);
    for (const auto& [n, eta, L] : {std::tuple{0, 0.5, 1e-2}, {3, 0.3, 5e-3}, {5, 0.8, 1e-2}}) {
        ModelParams params(eta, L);
        const auto grid = make_grid(family.halfwidth + std::sqrt(2.0 * n + 1.0), eta, L,
                                    eta * L / 20.0, Boundary::PaddedFloor);
        const auto state = spectra::sho_eigenstate(n, 1.0, grid, params);
        const double de = perturb::first_order_shift(state, params);
        const double total = nonlin::total_energy(state.psi, Harmonic{1.0}, params);
        const double tol =
            1e-9 + grid.dx * grid.dx * (2.0 * n * n + 2.0 * n + 1.0) / 32.0 * 4.0;
        CHECK(std::abs(total - (n + 0.5) - de) < tol);
    }
}

TEST_CASE("eta_scan: sign change bracket and argmin") {
    ModelParams base;
    const auto family = perturb::harmonic_family(base, 5);
    std::vector<double> etas;
    for (double e = 0.15; e < 0.96; e += 0.05) etas.push_back(e);
    const auto scan = perturb::eta_scan(5, 1e-3, etas, family, base);
    REQUIRE(scan.rows.size() == etas.size());

    REQUIRE(scan.sign_change.has_value());
    CHECK(scan.sign_change->first >= 0.2);
    CHECK(scan.sign_change->second <= 0.3);

    CHECK(scan.argmin_eta == doctest::Approx(0.7965351654).epsilon(0.02 / 0.7965));

    SUBCASE("sign of deltaE matches sign of S at small L") {
        for (const auto& row : scan.rows) {
            if (std::abs(row.eta - 0.25) < 0.04) continue;  // too close to the zero
            const double s = perturb::eta_shape_factor(row.eta);
            CHECK(std::signbit(row.deltaE) == std::signbit(s));
        }
    }
}

TEST_CASE("extract_C2") {
    ModelParams base;
    const auto family = perturb::harmonic_family(base, 1);
    std::vector<double> window1, window2;
    for (int i = 0; i < 5; ++i) {
        window1.push_back(1e-3 * std::pow(3.0, i / 4.0));
        window2.push_back(3e-3 * std::pow(10.0 / 3.0, i / 4.0));
    }

    SUBCASE("n = 1: linear exponent, stable estimate across windows") {
        const auto f1 = perturb::extract_C2(1, 0.5, window1, family, base);
        REQUIRE(f1.ok);
        CHECK(std::abs(f1.exponent - 1.0) < 0.1);
        CHECK(f1.r2 > 0.99);
        const auto f2 = perturb::extract_C2(1, 0.5, window2, family, base);
        REQUIRE(f2.ok);
        CHECK(std::abs(f1.c2 - f2.c2) / std::abs(f1.c2) < 0.05);
    }
    SUBCASE("n = 0 refuses: exponent near 2") {
        const auto f0 = perturb::extract_C2(0, 0.5, window1, family, base);
        CHECK(!f0.ok);
        CHECK(std::abs(f0.exponent - 2.0) < 0.2);
    }
}

TEST_SUITE_END();
