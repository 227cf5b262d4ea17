#include <doctest.h>

#include <numbers>

#include "msgate/errors.hpp"
#include "msgate/oracle.hpp"
#include "msgate/units.hpp"

using namespace msgate;

namespace {

GateCoupling single_mode() {
    GateCoupling g;
    g.pair = {0, 1};
    g.modes.push_back({Direction::RadialB, 0, mhz(2.0), 0.08, 0.06});
    return g;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single mode square gate matches the analytic propagator") {
    const GateCoupling g = single_mode();
    const double tau = 200e-6;
    const double delta = kTwoPi * 2.0 / tau;  // two closed loops
    // B = Omega^2 tau / delta for closed loops.
    const double omega = std::sqrt((std::numbers::pi / 2) / (0.08 * 0.06) * delta / tau);
    OracleSpec spec;
    spec.modes = {0};
    spec.n_max = 10;
    const OracleReport r = run_oracle(g, PulseShape::square(omega, tau), mhz(2.0) + delta, spec);
    CHECK(r.norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.overlap >= 1.0 - 1e-8);
    CHECK(r.overlap_opposite < r.overlap - 1e-3);
    CHECK(r.theta_numeric == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
    CHECK(r.theta_analytic == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
    CHECK(std::abs(r.alpha_analytic[0]) < 1e-6);
}

TEST_CASE("open trajectory displacement is recovered") {
    const GateCoupling g = single_mode();
    OracleSpec spec;
    spec.modes = {0};
    spec.n_max = 16;
    const PulseShape p = PulseShape::truncated_gaussian(khz(60), 200e-6, 25e-6);
    const OracleReport r = run_oracle(g, p, mhz(2.0) + khz(8), spec);
    CHECK(r.overlap >= 1.0 - 1e-8);
    CHECK(std::abs(r.alpha_numeric[0] - r.alpha_analytic[0]) < 1e-6 * (1 + std::abs(r.alpha_analytic[0])));
    CHECK(r.leakage < 1e-8);
}

TEST_CASE("invalid specs and truncation leakage") {
    const GateCoupling g = single_mode();
    const PulseShape p = PulseShape::square(khz(400), 200e-6);
    CHECK_THROWS_AS(run_oracle(g, p, mhz(2.0) + khz(20), OracleSpec{{0}, 4}), ConfigError);
    CHECK_THROWS_AS(run_oracle(g, p, mhz(2.0) + khz(20), OracleSpec{{0}, 10, 1000}), ConfigError);
    CHECK_THROWS_AS(run_oracle(g, p, mhz(2.0) + khz(20), OracleSpec{{3}, 10}), ConfigError);
    CHECK_THROWS_AS(run_oracle(g, p, mhz(2.0) + khz(20), OracleSpec{{}, 10}), ConfigError);
    // Near resonance the displacement is large enough to reach the top levels.
    CHECK_THROWS_AS(run_oracle(g, p, mhz(2.0) + khz(1), OracleSpec{{0}, 6}), Error);
}

}
