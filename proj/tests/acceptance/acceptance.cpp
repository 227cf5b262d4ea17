#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msgate/designer.hpp"
#include "msgate/errors.hpp"
#include "msgate/experiments.hpp"
#include "msgate/oracle.hpp"
#include "msgate/units.hpp"

using namespace msgate;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

SystemConfig three_ion() {
    SystemConfig cfg;
    cfg.n_ions = 3;
    cfg.center_spacing_m = 4.5e-6;
    cfg.target_pair = std::pair{0, 2};
    cfg.pulse.tau_s = 200e-6;
    cfg.pulse.z_s = 25e-6;
    return cfg;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

/// Crossing of g(x) = 0 between a (g < 0) and b (g >= 0) by bisection.
double bisect(const std::function<double(double)>& g, double a, double b, double tol) {
    while (std::abs(b - a) > tol) {
        const double m = 0.5 * (a + b);
        (g(m) < 0.0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

Outcome mode_structure() {
    const SystemConfig cfg = three_ion();
    const IonChain chain = build_chain(cfg);
    const auto [ra, rb] = radial_mode_pair(cfg, chain);
    const double split = angular_to_hz(rb.lowest_splitting());
    return {std::abs(split - 94.7e3) <= 0.02 * 94.7e3,
            fmt("dnu10/2pi = %.2f kHz (target 94.7 kHz +- 2%%)", split / 1e3)};
}

Outcome balance_point() {
    const GateDesign d = design_gate(three_ion());
    const double d0 = angular_to_hz(d.delta0()) / 1e3;
    return {std::abs(d0 - 37.2) <= 1.0 && std::abs(d.theta - std::numbers::pi / 2) < 1e-9,
            fmt("delta0/2pi = %.3f kHz (target 37.2 +- 1 kHz), theta = %.12f", d0, d.theta)};
}

Outcome robust_window() {
    const SystemConfig cfg = three_ion();
    const GateDesign d = design_gate(cfg);
    auto below = [&](double dw_khz) { return state_error(d, khz(dw_khz)) - 1e-3; };
    // Scan outward from zero for the first crossing on each side.
    double lo = 0.0, hi = 0.0;
    for (double x = 0.0; x > -20.0; x -= 0.1)
        if (below(x - 0.1) >= 0.0) { lo = bisect(below, x, x - 0.1, 1e-3); break; }
    for (double x = 0.0; x < 20.0; x += 0.1)
        if (below(x + 0.1) >= 0.0) { hi = bisect(below, x, x + 0.1, 1e-3); break; }

    auto at_z = [&](double z_us) {
        SystemConfig c = cfg;
        c.pulse.z_s = z_us * 1e-6;
        try {
            return state_error(design_gate(c), 0.0) - 1e-3;
        } catch (const Error&) {
            return 1.0;
        }
    };
    double z_lo = 0.0, z_hi = 0.0;
    for (double z = 25.0; z > 5.0; z -= 1.0)
        if (at_z(z - 1.0) >= 0.0) { z_lo = bisect(at_z, z, z - 1.0, 0.01); break; }
    for (double z = 25.0; z < 100.0; z += 1.0)
        if (at_z(z + 1.0) >= 0.0) { z_hi = bisect(at_z, z, z + 1.0, 0.01); break; }

    const auto t0 = std::chrono::steady_clock::now();
    const Table grid = contour(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool ok = std::abs(lo + 7.8) <= 0.5 && std::abs(hi - 8.5) <= 0.5 && std::abs(z_lo - 13.0) <= 2.0 &&
                    std::abs(z_hi - 44.0) <= 2.0 && secs < 120.0;
    return {ok, fmt("domega window [%.2f, %.2f] kHz (target [-7.8, 8.5] +- 0.5), z window [%.2f, %.2f] us "
                    "(target [13, 44] +- 2), full %zux contour %.1f s",
                    lo, hi, z_lo, z_hi, grid.rows.size(), secs)};
}

Outcome pulse_ordering() {
    const SystemConfig cfg = three_ion();
    PulseSpec gauss = cfg.pulse, square = cfg.pulse;
    square.kind = PulseKind::Square;
    const GateDesign bal = design_gate(cfg);
    const GateDesign unbal = design_at_detuning(cfg, khz(-40), gauss);
    const GateDesign sq = design_at_detuning(cfg, khz(-40), square);
    int points = 0, violations = 0;
    std::string first;
    for (int i = -20; i <= 20; ++i) {
        const double dw = 0.5 * i;
        if (std::abs(dw) < 2.0) continue;
        ++points;
        const double a = state_error(bal, khz(dw)), b = state_error(unbal, khz(dw)), c = state_error(sq, khz(dw));
        if (!(a < b && b < c)) {
            if (violations++ == 0) first = fmt(" first at %.1f kHz: %.2e / %.2e / %.2e", dw, a, b, c);
        }
    }
    return {violations == 0, fmt("balanced < unbalanced < square at %d/%d grid points%s", points - violations,
                                 points, first.c_str())};
}

Outcome large_chains() {
    std::vector<int> failed;
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 2; n <= 33; ++n) {
        SystemConfig cfg;
        cfg.n_ions = n;
        cfg.center_spacing_m = 3e-6;
        try {
            const GateDesign d = design_gate(cfg);
            const double e = std::max(state_error(d, khz(-10)), state_error(d, khz(10)));
            if (e > worst) { worst = e; worst_n = n; }
            if (e > 1e-2) failed.push_back(n);
        } catch (const Error&) {
            failed.push_back(n);
        }
    }
    std::ostringstream list;
    for (std::size_t i = 0; i < failed.size(); ++i) list << (i ? "," : "") << failed[i];
    return {failed.empty(), fmt("eps_s(+-10 kHz) <= 1e-2 for %d/32 chains; worst %.3g at N=%d; failing N: [%s]",
                                32 - static_cast<int>(failed.size()), worst, worst_n, list.str().c_str())};
}

Outcome oracle_equivalence() {
    const GateDesign d = design_gate(three_ion());
    OracleSpec spec;
    spec.n_max = 15;
    const OracleReport r = run_oracle(d, spec);
    double eta_max = 0.0;
    for (std::size_t k : r.modes)
        eta_max = std::max({eta_max, std::abs(d.coupling.modes[k].eta1), std::abs(d.coupling.modes[k].eta2)});
    const bool ok = r.overlap >= 1.0 - 1e-6 && r.overlap_opposite < 1.0 - 1e-3 && eta_max <= 0.1;
    return {ok, fmt("1 - overlap = %.2e with exp(-iB S^2), overlap %.4f with the opposite sign; %zu modes, eta <= %.3f, "
                    "leakage %.1e, theta %.9f vs %.9f",
                    1.0 - r.overlap, r.overlap_opposite, r.modes.size(), eta_max, r.leakage, r.theta_numeric,
                    r.theta_analytic)};
}

Outcome decomposition() {
    const SystemConfig base = three_ion();
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> z_us(12.0, 60.0), near(-8.0, 8.0), wide(-60.0, 180.0), dw(-10.0, 10.0);
    int samples = 0, qualifying = 0, violations = 0;
    double worst_ratio = 0.0;
    while (samples < 1000) {
        SystemConfig cfg = base;
        cfg.pulse.z_s = z_us(rng) * 1e-6;
        const double d0 = (samples % 2 == 0) ? 37.2 + near(rng) : wide(rng);
        const double w = dw(rng);
        try {
            const GateDesign d = design_at_detuning(cfg, khz(d0));
            const ErrorBreakdown e = evaluate_with_error(d, khz(w));
            ++samples;
            if (e.eps_s > 1e-3) continue;
            ++qualifying;
            const double gap = std::abs(e.eps_s - (1.0 - e.fidelity));
            if (gap > 0.2 * e.eps_s + 1e-9) ++violations;
            if (e.eps_s > 1e-9) worst_ratio = std::max(worst_ratio, gap / e.eps_s);
        } catch (const ResonanceError&) {
            continue;
        }
    }
    return {violations == 0 && qualifying > 0,
            fmt("%d samples, %d with eps_s <= 1e-3, %d violations, max |eps_s - (1-F)|/eps_s = %.3f", samples,
                qualifying, violations, worst_ratio)};
}

Outcome analytic_displacement() {
    const double z = 25e-6, w0 = khz(200);
    const PulseShape p = PulseShape::truncated_gaussian(w0, 200e-6, z);
    double worst = 0.0;
    for (int i = -40; i <= 40; ++i) {
        const double d = (i / 20.0) / z;
        const double approx = kTwoPi * w0 * w0 * z * z * std::exp(-d * d * z * z);
        worst = std::max(worst, std::abs(std::norm(evolve(p, d).alpha) / approx - 1.0));
    }
    return {worst <= 0.1, fmt("max relative deviation %.2e over |delta| z <= 2 (limit 0.1)", worst)};
}

Outcome properties() {
    std::vector<std::string> broken;
    const PulseShape g = PulseShape::truncated_gaussian(khz(150), 200e-6, 25e-6);

    const ModeEvolution a = evolve(g, khz(21)), b = evolve(g, khz(-21));
    if (std::abs(a.phase + b.phase) > 1e-9 * std::abs(a.phase)) broken.push_back("B odd");

    const ModeEvolution s = evolve(g.with_omega0(2.5 * g.omega0()), khz(21));
    if (std::abs(s.alpha - 2.5 * a.alpha) > 1e-9 * std::abs(s.alpha) ||
        std::abs(s.phase - 6.25 * a.phase) > 1e-9 * std::abs(s.phase))
        broken.push_back("omega0 scaling");

    const ModeEvolution c1 = evolve_fixed(g, khz(21), a.panels), c2 = evolve_fixed(g, khz(21), 2 * a.panels);
    const double area = g.omega0() * g.tau();
    if (std::abs(c1.alpha - c2.alpha) > 1e-10 * area || std::abs(c1.phase - c2.phase) > 1e-10 * area * area)
        broken.push_back("quadrature doubling");

    SystemConfig four;
    four.n_ions = 4;
    four.center_spacing_m = 3.5e-6;
    const GateDesign d4 = design_gate(four);
    const Trajectory t4 = compute_trajectory(d4.coupling, d4.pulse, {d4.delta_c, khz(4)});
    GateCoupling flipped = d4.coupling;
    flipped.even_flip = !flipped.even_flip;
    if (std::abs(displacement_error(spin_eigensystem(flipped), t4).total -
                 displacement_error(spin_eigensystem(d4.coupling), t4).total) > 1e-15 ||
        std::abs(rotation_angle(flipped, t4) + rotation_angle(d4.coupling, t4)) > 1e-12)
        broken.push_back("even flip");

    const GateDesign d3 = design_gate(three_ion());
    for (double dw : {-10.0, -3.0, 0.0, 6.0, 10.0}) {
        const ErrorBreakdown e = evaluate_with_error(d3, khz(dw));
        double tr = 0.0, asym = 0.0;
        for (int i = 0; i < 4; ++i) {
            tr += e.rho[i][i].real();
            for (int j = 0; j < 4; ++j) asym = std::max(asym, std::abs(e.rho[i][j] - std::conj(e.rho[j][i])));
        }
        const auto ev = hermitian_eigenvalues(e.rho);
        if (std::abs(tr - 1.0) > 1e-12 || asym > 1e-14 || ev[0] < -1e-10) broken.push_back("rho physical");
        if (e.eps_s <= 0.02) {
            const ParityScan scan = parity_scan(e.rho, uniform_phases(64));
            if (std::abs(parity_fidelity_estimate(e.rho, scan.amplitude) - e.fidelity) > 0.01)
                broken.push_back("parity estimate");
        }
    }
    std::string list;
    for (const auto& x : broken) list += (list.empty() ? "" : ", ") + x;
    return {broken.empty(), broken.empty() ? "B odd, omega0 scaling, quadrature doubling, even flip, rho "
                                             "Hermitian/PSD/unit trace, parity estimate: all hold"
                                           : "broken: " + list};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "mode structure", 1.0, mode_structure},
        {2, "balance point", 5.0, balance_point},
        {3, "robust window", 600.0, robust_window},
        {4, "pulse-shape ordering", 60.0, pulse_ordering},
        {5, "large-N robustness", 600.0, large_chains},
        {6, "oracle equivalence", 60.0, oracle_equivalence},
        {7, "error decomposition", 300.0, decomposition},
        {8, "analytic displacement", 60.0, analytic_displacement},
        {9, "property suite", 60.0, properties},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += fmt(" [over the %.0f s budget]", c.budget_s);
        }
        failures += !o.pass;
        std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
