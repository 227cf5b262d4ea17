#include <doctest.h>

#include <cmath>

#include "msgate/pulse.hpp"
#include "msgate/spline.hpp"
#include "msgate/units.hpp"

using namespace msgate;

namespace {

double max_spline_deviation(int knots) {
    const double w0 = khz(200), tau = 200e-6, z = 26.5e-6;
    const PulseShape s = PulseShape::spline_gaussian(w0, tau, z, knots);
    const PulseShape g = PulseShape::truncated_gaussian(w0, tau, z);
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double t = tau * i / 10000.0;
        worst = std::max(worst, std::abs(s(t) - g(t)) / w0);
    }
    return worst;
}

}  // namespace

TEST_SUITE("pulse") {

TEST_CASE("natural spline reproduces lines and interpolates knots") {
    const NaturalCubicSpline line({0, 1, 2.5, 4}, {1, 3, 6, 9});
    for (double t : {0.0, 0.3, 1.7, 3.9}) {
        CHECK(line(t) == doctest::Approx(1 + 2 * t));
        CHECK(line.derivative(t) == doctest::Approx(2.0));
    }
    const NaturalCubicSpline s({0, 1, 2, 3}, {0, 1, 0, 1});
    CHECK(s(1.0) == doctest::Approx(1.0));
    CHECK(s(2.0) == doctest::Approx(0.0));
    CHECK(std::abs(s.second_derivative(0.0)) < 1e-12);
    CHECK(std::abs(s.second_derivative(3.0)) < 1e-12);
}

TEST_CASE("square and Gaussian envelopes") {
    const PulseShape sq = PulseShape::square(khz(100), 200e-6);
    CHECK(sq(0.0) == khz(100));
    CHECK(sq(100e-6) == khz(100));
    CHECK(sq(-1e-9) == 0.0);
    CHECK(sq(200.001e-6) == 0.0);

    const PulseShape g = PulseShape::truncated_gaussian(khz(100), 200e-6, 25e-6);
    CHECK(g(100e-6) == doctest::Approx(khz(100)));
    CHECK(g(125e-6) == doctest::Approx(khz(100) * std::exp(-0.5)));
    CHECK(g(0.0) == doctest::Approx(khz(100) * std::exp(-8.0)));
    CHECK(g(201e-6) == 0.0);
}

TEST_CASE("spline pulse hits the Gaussian at the knots") {
    const double tau = 200e-6;
    const PulseShape s = PulseShape::spline_gaussian(khz(150), tau, 25e-6, 13);
    const PulseShape g = PulseShape::truncated_gaussian(khz(150), tau, 25e-6);
    for (int m = 0; m < 13; ++m) {
        const double t = m * tau / 12.0;
        CHECK(s(t) == doctest::Approx(g(t)).epsilon(1e-12));
    }
    CHECK(s(0.0) > 0.0);
    CHECK(s.breakpoints().size() == 13);
}

TEST_CASE("13-knot spline stays within 1% of the Gaussian and converges with more knots") {
    const double d13 = max_spline_deviation(13);
    CHECK(d13 <= 0.01);
    double prev = d13;
    for (int knots : {25, 51, 101}) {
        const double d = max_spline_deviation(knots);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("envelopes are symmetric and linear in omega0") {
    const double tau = 200e-6;
    for (const PulseShape& p : {PulseShape::square(khz(80), tau), PulseShape::truncated_gaussian(khz(80), tau, 30e-6),
                                PulseShape::spline_gaussian(khz(80), tau, 30e-6, 13)}) {
        for (double s : {0.0, 13e-6, 57e-6, 99e-6})
            CHECK(p(tau / 2 + s) == doctest::Approx(p(tau / 2 - s)).epsilon(1e-12));
        const PulseShape p3 = p.with_omega0(3 * p.omega0());
        CHECK(p3(71e-6) == doctest::Approx(3 * p(71e-6)).epsilon(1e-12));
    }
}

TEST_CASE("spec round trip and sample export") {
    PulseSpec spec;
    spec.kind = PulseKind::SplineGaussian;
    spec.omega0_hz = 120e3;
    spec.n_knots = 9;
    const PulseShape p = PulseShape::from_spec(spec);
    CHECK(p.omega0() == doctest::Approx(hz_to_angular(120e3)));
    const PulseSpec back = p.to_spec();
    CHECK(back.kind == PulseKind::SplineGaussian);
    CHECK(back.n_knots == 9);
    CHECK(back.omega0_hz == doctest::Approx(120e3));
    const std::string csv = p.samples_csv(11);
    CHECK(csv.rfind("t_us,omega_over_2pi_hz", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
    CHECK(p.with_width(40e-6).z() == 40e-6);
}

}
