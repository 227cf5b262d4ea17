#pragma once

#include <complex>
#include <vector>

#include "msgate/modes.hpp"
#include "msgate/pulse.hpp"
#include "msgate/quadrature.hpp"

namespace msgate {

using cplx = std::complex<double>;

struct QuadratureOptions {
    /// Accepted when doubling the panel count moves alpha by at most
    /// rel_tol * integral(Omega) and B by at most rel_tol * integral(Omega)^2.
    double rel_tol = 1e-10;
    int initial_panels = 512;
    int max_panels = 1 << 17;
};

/// End-of-gate displacement and entangling phase for one sideband detuning.
struct ModeEvolution {
    cplx alpha;
    double phase = 0.0;  // B(tau)
    int panels = 0;
};

/// alpha(tau) = i int_0^tau Omega(t) exp(-i delta t) dt and
/// B(tau) = -int_0^tau Im(alpha'(t) conj(alpha(t))) dt in one pass.
/// Panel count doubles until stable; throws ConvergenceError past max_panels.
ModeEvolution evolve(const PulseShape& pulse, double delta, const QuadratureOptions& opts = {});

/// Single pass on a fixed grid, without refinement.
ModeEvolution evolve_fixed(const PulseShape& pulse, double delta, int panels);

cplx alpha(const PulseShape& pulse, double delta, const QuadratureOptions& opts = {});
double entangling_phase(const PulseShape& pulse, double delta, const QuadratureOptions& opts = {});

/// alpha(t) at n_samples uniformly spaced times in [0, tau].
std::vector<cplx> trajectory_path(const PulseShape& pulse, double delta, int n_samples,
                                  int panels_per_interval = 16);

/// Carrier detuning of the blue tone and the common frequency error.
struct DetuningContext {
    double delta_c = 0.0;
    double delta_omega = 0.0;

    /// delta_k' = delta_c - nu_k + delta_omega.
    double mode_detuning(double nu) const { return delta_c - nu + delta_omega; }
};

/// Minimum allowed |delta_k'|.
inline constexpr double kResonanceGuard = 2.0 * 3.14159265358979323846 * 100.0;

struct Trajectory {
    std::vector<cplx> alpha;
    std::vector<double> phase;  // B_k(tau)
};

/// All modes of a coupling. Throws ResonanceError if any |delta_k'| < kResonanceGuard.
Trajectory compute_trajectory(const GateCoupling& coupling, const PulseShape& pulse,
                              const DetuningContext& ctx, const QuadratureOptions& opts = {});

/// theta = sum_k eta_{1,k} eta_{2,k} B_k (with the even-N flip applied).
double rotation_angle(const GateCoupling& coupling, const Trajectory& traj);

struct PhaseResult {
    double theta = 0.0;
    double dtheta = 0.0;   // d theta / d delta_c, rad s
    double d2theta = 0.0;  // rad s^2, only when requested
};

/// Central-difference step for d theta / d delta_c.
inline constexpr double kPhaseDerivativeStep = 2.0 * 3.14159265358979323846 * 10.0;

PhaseResult phase_and_derivative(const GateCoupling& coupling, const PulseShape& pulse,
                                 const DetuningContext& ctx, const QuadratureOptions& opts = {},
                                 bool second_derivative = false);

double theta_at(const GateCoupling& coupling, const PulseShape& pulse, const DetuningContext& ctx,
                const QuadratureOptions& opts = {});

}  // namespace msgate
