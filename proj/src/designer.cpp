#include "msgate/designer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "msgate/errors.hpp"
#include "msgate/roots.hpp"
#include "msgate/units.hpp"

namespace msgate {

namespace {

constexpr double kDefaultTrialOmega0 = kTwoPi * 100e3;
constexpr double kGridStep = kTwoPi * 50.0;
constexpr double kRefineTol = kTwoPi * 1.0;

QuadratureOptions quad_from(const SystemConfig& cfg) {
    QuadratureOptions q;
    q.rel_tol = cfg.tol.quad_rel;
    return q;
}

}  // namespace

double midpoint_guess(double nu1, double nu2) { return 0.5 * (nu1 + nu2); }

double bracket_margin(const PulseShape& pulse) {
    const double floor = kTwoPi * 2e3;
    if (pulse.kind() == PulseKind::Square) return floor;
    return std::max(2.0 / pulse.z(), floor);
}

BalanceSolution solve_balance(const GateCoupling& coupling, const PulseShape& pulse, std::size_t k1,
                              std::size_t k2, const QuadratureOptions& quad, double root_tol) {
    const double nu1 = coupling.modes.at(k1).freq;
    const double nu2 = coupling.modes.at(k2).freq;
    if (!(nu1 < nu2)) throw std::invalid_argument("solve_balance: need nu_k1 < nu_k2");
    const double margin = bracket_margin(pulse);
    const double lo = nu1 + margin;
    const double hi = nu2 - margin;
    if (!(lo < hi)) {
        std::ostringstream msg;
        msg << "resonance margin " << angular_to_hz(margin) << " Hz leaves no room between modes at "
            << angular_to_hz(nu1) << " and " << angular_to_hz(nu2) << " Hz";
        throw NoBracketError(msg.str(), 0.0, 0.0);
    }

    auto derivative = [&](double dc) { return phase_and_derivative(coupling, pulse, {dc, 0.0}, quad).dtheta; };
    const double f_lo = derivative(lo);
    const double f_hi = derivative(hi);
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "d theta / d delta_c has no sign change on [" << angular_to_hz(lo) << ", "
            << angular_to_hz(hi) << "] Hz: " << f_lo << " and " << f_hi << " rad s";
        throw NoBracketError(msg.str(), f_lo, f_hi);
    }
    const RootResult root = brent_root(derivative, lo, hi, f_lo, f_hi, root_tol);
    return {root.x, root.fx, {lo, hi}, root.iterations};
}

Calibration calibrate_omega0(const GateCoupling& coupling, const PulseShape& pulse, double delta_c,
                             const QuadratureOptions& quad) {
    const double trial = theta_at(coupling, pulse, {delta_c, 0.0}, quad);
    if (trial == 0.0 || !std::isfinite(trial))
        throw Error("calibrate_omega0: trial rotation angle is zero (degenerate geometry or zero pulse)");
    Calibration cal{pulse.with_omega0(pulse.omega0() * std::sqrt((std::numbers::pi / 2.0) / std::abs(trial))),
                    coupling.even_flip != (trial < 0.0), 0.0, trial};
    GateCoupling flipped = coupling;
    flipped.even_flip = cal.even_flip;
    cal.theta = theta_at(flipped, cal.pulse, {delta_c, 0.0}, quad);
    return cal;
}

GateDesign prepare_design(const SystemConfig& cfg) {
    validate(cfg);
    GateDesign d;
    d.chain = build_chain(cfg);
    auto [ra, rb] = radial_mode_pair(cfg, d.chain);
    d.radial_a = std::move(ra);
    d.radial_b = std::move(rb);
    d.coupling = gate_coupling(d.radial_a, d.radial_b, cfg.geometry, cfg.constants, cfg.resolved_pair(),
                               cfg.n_ions % 2 == 0);
    PulseSpec spec = cfg.pulse;
    if (spec.omega0_hz <= 0.0) spec.omega0_hz = angular_to_hz(kDefaultTrialOmega0);
    d.pulse = PulseShape::from_spec(spec);
    d.target_modes = cfg.target_modes;
    const ModeStructure& target = cfg.target_modes.direction == Direction::RadialA ? d.radial_a : d.radial_b;
    d.reference_freq = target.freqs.at(cfg.target_modes.k1);
    d.quad = quad_from(cfg);
    return d;
}

namespace {

void finish(GateDesign& d) {
    const Calibration cal = calibrate_omega0(d.coupling, d.pulse, d.delta_c, d.quad);
    d.pulse = cal.pulse;
    d.coupling.even_flip = cal.even_flip;
    const PhaseResult pr = phase_and_derivative(d.coupling, d.pulse, {d.delta_c, 0.0}, d.quad);
    d.theta = pr.theta;
    d.dtheta = pr.dtheta;
}

}  // namespace

GateDesign design_gate(const SystemConfig& cfg) {
    GateDesign d = prepare_design(cfg);
    const std::size_t k1 = d.coupling.find(cfg.target_modes.direction, cfg.target_modes.k1);
    const std::size_t k2 = d.coupling.find(cfg.target_modes.direction, cfg.target_modes.k2);
    const BalanceSolution sol =
        solve_balance(d.coupling, d.pulse, k1, k2, d.quad, hz_to_angular(cfg.tol.root_hz));
    d.delta_c = sol.delta_c;
    d.bracket = sol.bracket;
    d.balanced = true;
    finish(d);
    return d;
}

GateDesign design_at_detuning(const SystemConfig& cfg, double delta0, std::optional<PulseSpec> pulse_override) {
    SystemConfig c = cfg;
    if (pulse_override) c.pulse = *pulse_override;
    GateDesign d = prepare_design(c);
    d.delta_c = d.reference_freq + delta0;
    d.balanced = false;
    finish(d);
    return d;
}

ErrorBreakdown evaluate_with_error(const GateDesign& design, double delta_omega) {
    const Trajectory traj = compute_trajectory(design.coupling, design.pulse, {design.delta_c, delta_omega}, design.quad);
    return error_breakdown(design.coupling, traj);
}

double state_error(const GateDesign& design, double delta_omega) {
    const Trajectory traj = compute_trajectory(design.coupling, design.pulse, {design.delta_c, delta_omega}, design.quad);
    const double eps_d = displacement_error(spin_eigensystem(design.coupling), traj).total;
    return eps_d + rotation_error(rotation_angle(design.coupling, traj));
}

Sensitivity sensitivity(const GateDesign& design, double half_range, double search_half_range) {
    auto eps = [&](double dw) { return state_error(design, dw); };

    const int n_search = static_cast<int>(std::round(search_half_range / kGridStep));
    int best = -n_search;
    double best_val = eps(best * kGridStep);
    for (int i = -n_search + 1; i <= n_search; ++i) {
        const double v = eps(i * kGridStep);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const MinimumResult refined =
        golden_section_minimize(eps, (best - 1) * kGridStep, (best + 1) * kGridStep, kRefineTol);
    Sensitivity s;
    s.delta_omega_star = refined.fx < best_val ? refined.x : best * kGridStep;
    s.eps_s_min = std::min(refined.fx, best_val);

    const int n_window = static_cast<int>(std::round(half_range / kGridStep));
    s.eps_s_max = s.eps_s_min;
    for (int i = -n_window; i <= n_window; ++i)
        s.eps_s_max = std::max(s.eps_s_max, eps(s.delta_omega_star + i * kGridStep));
    return s;
}

nlohmann::json to_json(const GateDesign& d) {
    nlohmann::json j;
    j["delta_c_hz"] = angular_to_hz(d.delta_c);
    j["delta0_hz"] = angular_to_hz(d.delta0());
    j["omega0_hz"] = angular_to_hz(d.pulse.omega0());
    j["theta"] = d.theta;
    j["target_modes"] = {{"direction", to_string(d.target_modes.direction)},
                         {"k1", d.target_modes.k1},
                         {"k2", d.target_modes.k2}};
    j["target_pair"] = {d.coupling.pair.first, d.coupling.pair.second};
    j["even_flip"] = d.coupling.even_flip;
    j["pulse"] = {{"type", to_string(d.pulse.kind())},
                  {"tau_s", d.pulse.tau()},
                  {"z_s", d.pulse.z()}};
    if (d.pulse.kind() == PulseKind::SplineGaussian) j["pulse"]["n_knots"] = d.pulse.n_knots();
    j["diagnostics"] = {{"balanced", d.balanced},
                        {"dtheta_ddelta_c", d.dtheta},
                        {"bracket_hz", {angular_to_hz(d.bracket.first), angular_to_hz(d.bracket.second)}},
                        {"axial_freq_hz", angular_to_hz(d.chain.axial_angular_freq)},
                        {"center_spacing_m", d.chain.center_spacing()},
                        {"splitting_10_hz", angular_to_hz((d.target_modes.direction == Direction::RadialA ? d.radial_a : d.radial_b).lowest_splitting())}};
    return j;
}

}  // namespace msgate
