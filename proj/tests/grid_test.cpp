#include <doctest.h>

#include <cmath>
#include <random>

#include "vsgsim/errors.hpp"
#include "vsgsim/grid.hpp"

using namespace vsgsim;

TEST_SUITE_BEGIN("grid");

TEST_CASE("impedance derivation matches hand-computed references") {
    // Expected values were computed independently from r, x = omega * l,
    // z = hypot(r, x), alpha = atan2(x, r) and frozen here.
    struct Case {
        double r, l, z, alpha, r_over_x;
    };
    const Case cases[] = {
        {1.25, 4e-3, 1.7720146726254837, 0.7877924126133848, 0.9952229299363057},
        {0.75, 0.95e-3, 0.8071449002502586, 0.3785508281396405, 2.5142474019443513},
        {1.75, 5.5e-3, 2.4586640681475784, 0.7787833619768448, 1.013317892298784},
        {1.75, 2.2e-3, 1.8814102795509544, 0.3759661580033865, 2.5332947307469595},
        {0.75, 2.3e-3, 1.0411881866406283, 0.766517103482699, 1.0384934921074496},
    };
    for (const auto& c : cases) {
        CAPTURE(c.r);
        CAPTURE(c.l);
        const GridImpedance g = make_grid_impedance(c.r, c.l, 314.0);
        CHECK(g.r_ohm == c.r);
        CHECK(g.x_ohm == doctest::Approx(314.0 * c.l).epsilon(1e-15));
        CHECK(g.z_ohm == doctest::Approx(c.z).epsilon(1e-14));
        CHECK(g.alpha_rad == doctest::Approx(c.alpha).epsilon(1e-14));
        CHECK(g.r_over_x == doctest::Approx(c.r_over_x).epsilon(1e-14));
    }
}

TEST_CASE("polar and rectangular forms stay consistent over random ties") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> rd(0.0, 3.0);
    std::uniform_real_distribution<double> ld(0.2e-3, 25e-3);
    for (int i = 0; i < 2000; ++i) {
        const double r = rd(rng);
        const double l = ld(rng);
        const GridImpedance g = make_grid_impedance(r, l, 314.0);
        CHECK(g.z_ohm * std::cos(g.alpha_rad) == doctest::Approx(r).epsilon(1e-12));
        CHECK(g.z_ohm * std::sin(g.alpha_rad) ==
              doctest::Approx(g.x_ohm).epsilon(1e-12));
        CHECK(g.alpha_rad > 0.0);
        CHECK(g.alpha_rad <= 3.14159265358979324 / 2.0);
        CHECK(g.r_over_x * g.x_ohm == doctest::Approx(r).epsilon(1e-12));
        CHECK(std::abs(g.phasor() - Complex(r, g.x_ohm)) < 1e-12 * g.z_ohm);
    }
}

TEST_CASE("purely inductive tie") {
    const GridImpedance g = make_grid_impedance(0.0, 4e-3, 314.0);
    CHECK(g.alpha_rad == doctest::Approx(3.14159265358979324 / 2.0));
    CHECK(g.r_over_x == 0.0);
    CHECK(g.z_ohm == doctest::Approx(1.256));
}

TEST_CASE("impedance inputs are validated") {
    CHECK_THROWS_AS(make_grid_impedance(-0.1, 4e-3, 314.0), ConfigError);
    CHECK_THROWS_AS(make_grid_impedance(1.0, 0.0, 314.0), ConfigError);
    CHECK_THROWS_AS(make_grid_impedance(1.0, -1e-3, 314.0), ConfigError);
    CHECK_THROWS_AS(make_grid_impedance(1.0, 4e-3, 0.0), ConfigError);
}

TEST_CASE("short-circuit ratio reference values") {
    CHECK(short_circuit_ratio(220.0, 0.85, 20e3) ==
          doctest::Approx(2.847058823529412).epsilon(1e-15));
    CHECK(short_circuit_ratio(220.0, 2.6, 20e3) ==
          doctest::Approx(0.9307692307692308).epsilon(1e-15));
    CHECK(short_circuit_ratio(220.0, 0.4, 20e3) ==
          doctest::Approx(6.05).epsilon(1e-15));
}

TEST_CASE("short-circuit ratio monotonicity") {
    double prev = 1e300;
    for (double z = 0.2; z < 3.0; z += 0.1) {
        const double scr = short_circuit_ratio(220.0, z, 20e3);
        CHECK(scr < prev);
        prev = scr;
    }
    CHECK(short_circuit_ratio(230.0, 1.0, 20e3) >
          short_circuit_ratio(220.0, 1.0, 20e3));
}

TEST_CASE("strength classification boundaries are exact") {
    CHECK(classify_grid(1.0) == GridStrength::very_weak);
    CHECK(classify_grid(2.0) == GridStrength::very_weak);
    CHECK(classify_grid(std::nextafter(2.0, 3.0)) == GridStrength::weak);
    CHECK(classify_grid(2.9) == GridStrength::weak);
    CHECK(classify_grid(3.0) == GridStrength::weak);
    CHECK(classify_grid(std::nextafter(3.0, 4.0)) == GridStrength::strong);
    CHECK(classify_grid(6.05) == GridStrength::strong);

    // bench grids from the reference table
    CHECK(classify_grid(short_circuit_ratio(220.0, 0.85, 20e3)) ==
          GridStrength::weak);
    CHECK(classify_grid(short_circuit_ratio(220.0, 2.6, 20e3)) ==
          GridStrength::very_weak);
    CHECK(classify_grid(short_circuit_ratio(220.0, 0.4, 20e3)) ==
          GridStrength::strong);
}

TEST_CASE("strength names") {
    CHECK(std::string(to_string(GridStrength::very_weak)) == "very-weak");
    CHECK(std::string(to_string(GridStrength::weak)) == "weak");
    CHECK(std::string(to_string(GridStrength::strong)) == "strong");
}

TEST_SUITE_END();
