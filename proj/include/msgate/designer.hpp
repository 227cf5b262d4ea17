#pragma once

#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "msgate/chain.hpp"
#include "msgate/config.hpp"
#include "msgate/error_metrics.hpp"
#include "msgate/modes.hpp"
#include "msgate/pulse.hpp"
#include "msgate/trajectory.hpp"

namespace msgate {

/// A calibrated gate: detuning, pulse and couplings, ready for error evaluation.
struct GateDesign {
    IonChain chain;
    ModeStructure radial_a;
    ModeStructure radial_b;
    GateCoupling coupling;
    PulseShape pulse = PulseShape::square(0.0, 1.0);
    double delta_c = 0.0;         // rad/s
    double theta = 0.0;           // achieved rotation angle
    TargetModes target_modes;
    double reference_freq = 0.0;  // nu_{k1}; delta_0 = delta_c - reference_freq
    bool balanced = false;
    double dtheta = 0.0;          // d theta / d delta_c at delta_c
    std::pair<double, double> bracket{0.0, 0.0};
    QuadratureOptions quad;

    double delta0() const { return delta_c - reference_freq; }
};

/// (nu1 + nu2) / 2.
double midpoint_guess(double nu1, double nu2);

/// Distance kept from each targeted mode during the balance search:
/// max(2/z, 2 pi x 2 kHz).
double bracket_margin(const PulseShape& pulse);

struct BalanceSolution {
    double delta_c = 0.0;
    double dtheta = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    int iterations = 0;
};

/// Root of d theta / d delta_c strictly between modes k1 < k2 (indices into
/// coupling.modes). Throws NoBracketError when the derivative keeps its sign.
BalanceSolution solve_balance(const GateCoupling& coupling, const PulseShape& pulse, std::size_t k1,
                              std::size_t k2, const QuadratureOptions& quad = {},
                              double root_tol = 2.0 * 3.14159265358979323846);

struct Calibration {
    PulseShape pulse;
    bool even_flip = false;
    double theta = 0.0;
    double theta_trial = 0.0;
};

/// Rescale omega0 so theta = +pi/2, toggling the second ion's laser phase when the
/// trial phase is negative.
Calibration calibrate_omega0(const GateCoupling& coupling, const PulseShape& pulse, double delta_c,
                             const QuadratureOptions& quad = {});

/// Chain, modes, couplings and pulse for a config, without choosing a detuning.
GateDesign prepare_design(const SystemConfig& cfg);

/// Full balanced design: solve the balance equation, then calibrate omega0.
GateDesign design_gate(const SystemConfig& cfg);

/// Unbalanced design at a fixed delta_0 above mode k1, omega0 calibrated.
GateDesign design_at_detuning(const SystemConfig& cfg, double delta0,
                              std::optional<PulseSpec> pulse_override = std::nullopt);

/// Full error budget with every sideband detuning shifted by delta_omega.
ErrorBreakdown evaluate_with_error(const GateDesign& design, double delta_omega);

/// eps_d + eps_r only (no density matrix), for dense scans.
double state_error(const GateDesign& design, double delta_omega);

struct Sensitivity {
    double delta_omega_star = 0.0;  // minimizer of eps_s
    double eps_s_min = 0.0;
    double eps_s_max = 0.0;
};

/// Maximum eps_s within +-half_range of the eps_s minimum. The minimum is located
/// on a 2 pi x 50 Hz grid over +-search_half_range and refined by golden section
/// to 2 pi x 1 Hz.
Sensitivity sensitivity(const GateDesign& design, double half_range = 2.0 * 3.14159265358979323846 * 3e3,
                        double search_half_range = 2.0 * 3.14159265358979323846 * 10e3);

nlohmann::json to_json(const GateDesign& design);

}  // namespace msgate
