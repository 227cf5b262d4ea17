#include <doctest.h>

#include <cmath>

#include "msgate/chain.hpp"
#include "msgate/config.hpp"
#include "msgate/units.hpp"

using namespace msgate;

TEST_SUITE("chain") {

TEST_CASE("two and three ion equilibria are analytic") {
    const auto u2 = equilibrium_positions(2);
    CHECK(u2[1] == doctest::Approx(std::cbrt(0.25)).epsilon(1e-12));
    CHECK(u2[0] == doctest::Approx(-std::cbrt(0.25)).epsilon(1e-12));

    const auto u3 = equilibrium_positions(3);
    CHECK(std::abs(u3[1]) < 1e-14);
    CHECK(u3[2] == doctest::Approx(std::cbrt(1.25)).epsilon(1e-12));
    CHECK(u3[0] == doctest::Approx(-std::cbrt(1.25)).epsilon(1e-12));
}

TEST_CASE("equilibria are ordered, symmetric and force free") {
    for (int n : {4, 7, 10, 20, 33, 64}) {
        CAPTURE(n);
        const auto u = equilibrium_positions(n);
        REQUIRE(u.size() == static_cast<std::size_t>(n));
        for (int i = 1; i < n; ++i) CHECK(u[i] > u[i - 1]);
        for (int i = 0; i < n; ++i) CHECK(u[i] == doctest::Approx(-u[n - 1 - i]).epsilon(1e-10));
        CHECK(force_residual(u) < 1e-10);
    }
}

TEST_CASE("center spacing inversion reproduces the target") {
    for (int n : {2, 3, 8, 33}) {
        for (double dx : {3e-6, 4.5e-6}) {
            const double wz = axial_freq_for_center_spacing(n, dx);
            const IonChain chain = make_chain(n, wz);
            CHECK(chain.center_spacing() == doctest::Approx(dx).epsilon(1e-9));
        }
    }
}

TEST_CASE("three ion chain at 4.5 um has an axial frequency near 0.53 MHz") {
    SystemConfig cfg;
    cfg.center_spacing_m = 4.5e-6;
    const IonChain chain = build_chain(cfg);
    CHECK(angular_to_hz(chain.axial_angular_freq) == doctest::Approx(0.5314e6).epsilon(1e-3));
}

TEST_CASE("length scale definition") {
    const PhysicalConstants c;
    const double w = khz(500);
    const double l = length_scale(w, c);
    CHECK(l * l * l * c.ion_mass * w * w == doctest::Approx(c.coulomb_coeff).epsilon(1e-12));
}

}
