#include <doctest.h>

#include <cmath>
#include <random>

#include "qnl/fields.hpp"
#include "qnl/grid.hpp"
#include "qnl/params.hpp"
#include "qnl/serialize.hpp"

using namespace qnl;

TEST_SUITE_BEGIN("core");

TEST_CASE("params: derived scales and validation") {
    ModelParams p;
    CHECK(p.a() == 1.0);
    CHECK(p.escale() == 0.25);  // 1/(4 L^2) at L = 1
    CHECK(p.eps() == p.L);

    // escale * L^2 reproduces hbar^2/(4m) to one ulp
    ModelParams q(0.3, 0.7351);
    const double lhs = q.escale() * q.L * q.L;
    const double rhs = q.hbar * q.hbar / (4.0 * q.mass);
    CHECK(std::abs(lhs - rhs) <= std::ldexp(1.0, -52) * rhs);

    CHECK_THROWS_AS(ModelParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("make_grid: spec examples") {
    SUBCASE("exact divisor, eta = 0.5") {
        const auto g = make_grid(8.0, 0.5, 1.0, 0.01, Boundary::PaddedFloor);
        CHECK(g.shift_cells == 50);
        CHECK(g.dx == doctest::Approx(0.01).epsilon(1e-14));
        CHECK(g.count >= 1600);
        CHECK(g.shift_length() == 0.5);
    }
    SUBCASE("snapped, eta = 1/3") {
        const auto g = make_grid(8.0, 1.0 / 3.0, 1.0, 0.01, Boundary::PaddedFloor);
        CHECK(g.shift_cells == 33);
        CHECK(g.dx == doctest::Approx(1.0 / 99.0).epsilon(1e-14));
        CHECK(g.shift_length() == 1.0 / 3.0);
    }
    SUBCASE("exact divisor, eta = 0.9") {
        const auto g = make_grid(8.0, 0.9, 1.0, 0.01, Boundary::PaddedFloor);
        CHECK(g.shift_cells == 90);
        CHECK(g.dx == doctest::Approx(0.01).epsilon(1e-14));
    }
}

TEST_CASE("make_grid: shift alignment is exact for random rationals") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> ue(0.02, 1.0), ul(-3.0, 1.0), ut(-4.0, -1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double eta = ue(rng);
        const double L = std::pow(10.0, ul(rng));
        const double target = std::pow(10.0, ut(rng)) * eta * L * 10.0;
        const auto g = make_grid(5.0 * std::max(1.0, eta * L), eta, L, target,
                                 Boundary::Periodic);
        // stored shift is the requested eta*L bit for bit
        CHECK(g.shift_length() == eta * L);
        // and the snapped spacing reproduces it to at most one ulp
        const double err = std::abs(static_cast<double>(g.shift_cells) * g.dx - eta * L);
        CHECK(err <= std::ldexp(eta * L, -52));
        CHECK(g.count > 4 * g.shift_cells);
        CHECK(g.count % 2 == 0);
        // x = 0 on the grid
        CHECK(g.x(g.count / 2) == 0.0);
    }
}

TEST_CASE("make_grid: rejections") {
    CHECK_THROWS_AS(make_grid(0.1, 0.5, 1.0, 0.01, Boundary::Periodic), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8.0, 0.5, 1.0, -0.01, Boundary::Periodic), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8.0, 0.5, 1.0, 1e-12, Boundary::Periodic), std::invalid_argument);
}

namespace {
DensityField gaussian_density(const Grid1D& g) {
    DensityField p;
    p.grid = g;
    p.values.resize(g.count);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = g.x(i);
        p.values[i] = std::exp(-x * x);
    }
    return p;
}
}  // namespace

TEST_CASE("density_of: plane wave and normalization") {
    const auto g = make_grid(6.0, 0.5, 1.0, 0.01, Boundary::Periodic);
    WaveField psi;
    psi.grid = g;
    psi.values.resize(g.count);
    const double k = 2.0 * M_PI * 3.0 / g.length();
    for (std::size_t i = 0; i < g.count; ++i) psi.values[i] = std::polar(1.0, k * g.x(i));
    auto p = density_of(psi);
    for (std::size_t i = 0; i < g.count; i += 97) CHECK(p.values[i] == doctest::Approx(1.0));

    // normalized Gaussian integrates to 1
    WaveField gauss;
    gauss.grid = g;
    gauss.values.resize(g.count);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = g.x(i);
        gauss.values[i] = std::exp(-x * x / 2.0);
    }
    normalize(gauss);
    const auto pg = density_of(gauss);
    CHECK(integrate(g, pg.values) == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : pg.values) CHECK(v >= 0.0);
}

TEST_CASE("shift_density: round trip, spike, padding") {
    const auto g = make_grid(6.0, 0.5, 1.0, 0.05, Boundary::Periodic);
    auto p = gaussian_density(g);

    SUBCASE("constant density is shift-invariant") {
        DensityField c;
        c.grid = g;
        c.values.assign(g.count, 2.5);
        const auto s = shift_density(c, +1);
        CHECK(s.values == c.values);
    }
    SUBCASE("periodic round trip is exact") {
        const auto back = shift_density(shift_density(p, +1), -1);
        CHECK(back.values == p.values);
    }
    SUBCASE("spike moves by -s cells under direction +1") {
        DensityField spike;
        spike.grid = g;
        spike.values.assign(g.count, 0.0);
        const std::size_t j = g.count / 2 + 3;
        spike.values[j] = 1.0;
        const auto moved = shift_density(spike, +1);
        CHECK(moved.values[j - g.shift_cells] == 1.0);
    }
    SUBCASE("padded boundary cells take the floor value") {
        auto gp = g;
        gp.boundary = Boundary::PaddedFloor;
        auto pp = gaussian_density(gp);
        const double floor = density_floor(pp);
        const auto moved = shift_density(pp, +1);
        CHECK(moved.values.back() == floor);
        CHECK(moved.values[gp.count - gp.shift_cells] == floor);
    }
}

TEST_CASE("pairwise sum and trapezoid quadrature") {
    const auto g = make_grid(6.0, 0.5, 1.0, 0.01, Boundary::PaddedFloor);
    const auto p = gaussian_density(g);
    // int exp(-x^2) = sqrt(pi)
    CHECK(integrate(g, p.values) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    std::vector<double> ones(1000, 1.0);
    CHECK(pairwise_sum(ones) == 1000.0);
}

TEST_CASE("serialization round trip") {
    const auto g = make_grid(2.0, 0.5, 1.0, 0.25, Boundary::PaddedFloor);
    auto p = gaussian_density(g);
    const auto text = to_json(g, p.values);
    const auto [g2, vals] = field_from_json(text);
    CHECK(g2.dx == g.dx);
    CHECK(g2.count == g.count);
    CHECK(vals == p.values);

    std::ostringstream os;
    write_csv(os, g, p.values);
    CHECK(os.str().substr(0, 8) == "x,value\n");
}

TEST_SUITE_END();
