#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "msgate/designer.hpp"
#include "msgate/error_metrics.hpp"
#include "msgate/units.hpp"

using namespace msgate;

namespace {

GateCoupling one_mode(double eta1, double eta2) {
    GateCoupling g;
    g.pair = {0, 1};
    g.modes.push_back({Direction::RadialB, 0, mhz(2.0), eta1, eta2});
    return g;
}

Trajectory traj(cplx alpha, double phase) { return {{alpha}, {phase}}; }

double trace(const Mat4& r) {
    double t = 0.0;
    for (int i = 0; i < 4; ++i) t += r[i][i].real();
    return t;
}

}  // namespace

TEST_SUITE("error_metrics") {

TEST_CASE("spin eigenbasis is orthonormal with the expected overlaps") {
    const SpinEigensystem e = spin_eigensystem(one_mode(0.1, 0.05));
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
            cplx ip{};
            for (int q = 0; q < 4; ++q) ip += std::conj(e.basis[q][s]) * e.basis[q][t];
            CHECK(std::abs(ip - cplx(s == t ? 1.0 : 0.0)) < 1e-14);
        }
    for (int s = 0; s < 4; ++s) CHECK(std::abs(e.c[s]) == doctest::Approx(0.5));
    CHECK(e.lambda[0][0] == doctest::Approx(0.075));
    CHECK(e.lambda[0][1] == doctest::Approx(0.025));
    CHECK(e.lambda[0][3] == doctest::Approx(-0.075));
}

TEST_CASE("ideal gate") {
    const GateCoupling g = one_mode(0.1, 0.1);
    const double b = (std::numbers::pi / 2) / (0.1 * 0.1);
    const ErrorBreakdown e = error_breakdown(g, traj(0.0, b));
    CHECK(e.theta == doctest::Approx(std::numbers::pi / 2));
    CHECK(e.eps_d == 0.0);
    CHECK(e.eps_r < 1e-20);
    CHECK(e.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.rho[0][0].real() == doctest::Approx(0.5));
    CHECK(e.rho[3][3].real() == doctest::Approx(0.5));
    CHECK(std::abs(e.rho[3][0] - cplx(0.0, 0.5)) < 1e-14);
}

TEST_CASE("rotation error definition") {
    CHECK(rotation_error(std::numbers::pi / 2) == 0.0);
    CHECK(rotation_error(std::numbers::pi / 2 + 0.2) == doctest::Approx(0.01));
}

TEST_CASE("displacement error closed form for one mode") {
    const GateCoupling g = one_mode(0.1, 0.1);
    const cplx a{3.0, -1.0};
    const DisplacementError d = displacement_error(spin_eigensystem(g), traj(a, 0.0));
    // lambda in {0.1, 0, 0, -0.1}
    const double x = std::exp(-0.01 * std::norm(a) / 2);
    const double expected = 1.0 - std::pow((2.0 + 2.0 * x) / 4.0, 2);
    CHECK(d.total == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.per_mode.size() == 1);
}

TEST_CASE("even flip leaves eps_d invariant and flips theta") {
    GateCoupling g = one_mode(0.08, 0.05);
    const Trajectory t = traj({1.5, 0.7}, 120.0);
    const double ed = displacement_error(spin_eigensystem(g), t).total;
    const double th = rotation_angle(g, t);
    g.even_flip = true;
    CHECK(displacement_error(spin_eigensystem(g), t).total == doctest::Approx(ed).epsilon(1e-14));
    CHECK(rotation_angle(g, t) == doctest::Approx(-th));
}

TEST_CASE("density matrix is a state") {
    const GateCoupling g = one_mode(0.1, 0.07);
    for (cplx a : {cplx{0.0, 0.0}, cplx{2.0, 1.0}, cplx{-8.0, 3.0}}) {
        const Mat4 r = reduced_density_matrix(spin_eigensystem(g), traj(a, 150.0));
        CHECK(trace(r) == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(r[i][j] - std::conj(r[j][i])) < 1e-15);
        for (double ev : hermitian_eigenvalues(r)) CHECK(ev > -1e-12);
    }
}

TEST_CASE("hermitian eigenvalues of a known matrix") {
    Mat4 m{};
    m[0][0] = 1.0;
    m[1][1] = 2.0;
    m[2][3] = cplx(0.0, 1.0);
    m[3][2] = cplx(0.0, -1.0);
    const auto ev = hermitian_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
    CHECK(ev[2] == doctest::Approx(1.0));
    CHECK(ev[3] == doctest::Approx(2.0));
}

TEST_CASE("parity scan of the ideal Bell state") {
    const GateCoupling g = one_mode(0.1, 0.1);
    const Mat4 rho = error_breakdown(g, traj(0.0, (std::numbers::pi / 2) / 0.01)).rho;
    const ParityScan scan = parity_scan(rho, uniform_phases(64));
    CHECK(scan.phi.size() == 64);
    CHECK(scan.amplitude >= 1.0 - 1e-6);
    CHECK(std::abs(scan.offset) < 1e-12);
    CHECK_FALSE(scan.degenerate);
    CHECK(parity_fidelity_estimate(rho, scan.amplitude) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS(parity_scan(rho, uniform_phases(4)));
}

TEST_CASE("parity of a product state has no 2-phi oscillation") {
    Mat4 rho{};
    rho[0][0] = 1.0;
    const ParityScan scan = parity_scan(rho, uniform_phases(32));
    CHECK(scan.amplitude < 1e-12);
    CHECK(parity_after_analysis(rho, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("three ion design has near unit fidelity") {
    const GateDesign d = design_gate(test::three_ion_config());
    const ErrorBreakdown e = evaluate_with_error(d, 0.0);
    CHECK(e.eps_s < 1e-6);
    CHECK(1.0 - e.fidelity == doctest::Approx(e.eps_s).epsilon(0.2));
    CHECK(e.eps_d_per_mode.size() == 6);
}

}
