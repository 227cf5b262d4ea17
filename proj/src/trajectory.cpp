#include "msgate/trajectory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "msgate/errors.hpp"
#include "msgate/units.hpp"

namespace msgate {

namespace {

constexpr cplx kI{0.0, 1.0};

PanelGrid sampled_grid(const PulseShape& pulse, int panels) {
    PanelGrid grid = make_panel_grid(pulse.tau(), pulse.breakpoints(), panels);
    grid.values.resize(grid.times.size());
    for (std::size_t i = 0; i < grid.times.size(); ++i) grid.values[i] = pulse.amplitude(grid.times[i]);
    return grid;
}

ModeEvolution integrate(const PanelGrid& grid, double delta) {
    constexpr int n = GaussLegendre8::kOrder;
    const auto& rule = GaussLegendre8::get();

    cplx a_start{0.0, 0.0};
    double phase = 0.0;
    double cached_h2 = -1.0;
    std::array<cplx, n> offset{};
    std::array<cplx, n> f{};

    for (std::size_t p = 0; p < grid.panels(); ++p) {
        const double a = grid.edges[p];
        const double h2 = 0.5 * (grid.edges[p + 1] - a);
        if (h2 != cached_h2) {
            for (int i = 0; i < n; ++i) offset[i] = std::polar(1.0, -delta * h2 * (1.0 + rule.nodes[i]));
            cached_h2 = h2;
        }
        const cplx start_phase = std::polar(1.0, -delta * a);
        const double* omega = &grid.values[p * n];
        cplx sum{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            f[i] = omega[i] * start_phase * offset[i];
            sum += rule.weights[i] * f[i];
        }
        double panel_phase = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (int j = 0; j < n; ++j) acc += rule.cumulative[i][j] * f[j];
            const cplx a_node = a_start + kI * h2 * acc;
            // -Im(alpha' conj(alpha)) with alpha' = i f
            panel_phase -= rule.weights[i] * (f[i].real() * a_node.real() + f[i].imag() * a_node.imag());
        }
        phase += h2 * panel_phase;
        a_start += kI * h2 * sum;
    }
    return {a_start, phase, static_cast<int>(grid.panels())};
}

double envelope_area(const PanelGrid& grid) {
    const auto& rule = GaussLegendre8::get();
    double s = 0.0;
    for (std::size_t p = 0; p < grid.panels(); ++p) {
        const double h2 = 0.5 * (grid.edges[p + 1] - grid.edges[p]);
        for (int i = 0; i < GaussLegendre8::kOrder; ++i)
            s += h2 * rule.weights[i] * std::abs(grid.values[p * GaussLegendre8::kOrder + i]);
    }
    return s;
}

/// Grids at initial_panels * 2^level, built on demand and shared between detunings.
class GridLadder {
public:
    GridLadder(const PulseShape& pulse, const QuadratureOptions& opts) : pulse_(pulse), opts_(opts) {}

    const PanelGrid& level(std::size_t k) {
        while (levels_.size() <= k) {
            const long panels = static_cast<long>(opts_.initial_panels) << levels_.size();
            if (panels > opts_.max_panels) {
                std::ostringstream msg;
                msg << "quadrature did not converge within " << opts_.max_panels << " panels for "
                    << pulse_.describe();
                throw ConvergenceError(msg.str());
            }
            levels_.push_back(sampled_grid(pulse_, static_cast<int>(panels)));
            if (levels_.size() == 1) area_ = envelope_area(levels_.front());
        }
        return levels_[k];
    }

    double area() {
        level(0);
        return area_;
    }

    ModeEvolution evolve(double delta) {
        const double tol_alpha = opts_.rel_tol * area();
        const double tol_phase = opts_.rel_tol * area() * area();
        ModeEvolution coarse = integrate(level(0), delta);
        for (std::size_t k = 1;; ++k) {
            ModeEvolution fine = integrate(level(k), delta);
            if (std::abs(fine.alpha - coarse.alpha) <= tol_alpha &&
                std::abs(fine.phase - coarse.phase) <= tol_phase)
                return fine;
            coarse = fine;
        }
    }

private:
    const PulseShape& pulse_;
    QuadratureOptions opts_;
    std::vector<PanelGrid> levels_;
    double area_ = 0.0;
};

}  // namespace

ModeEvolution evolve(const PulseShape& pulse, double delta, const QuadratureOptions& opts) {
    GridLadder ladder(pulse, opts);
    return ladder.evolve(delta);
}

ModeEvolution evolve_fixed(const PulseShape& pulse, double delta, int panels) {
    return integrate(sampled_grid(pulse, panels), delta);
}

cplx alpha(const PulseShape& pulse, double delta, const QuadratureOptions& opts) {
    if (pulse.kind() == PulseKind::Square) {
        // Omega0 (1 - e^{-i delta tau}) / delta, with the delta -> 0 limit i Omega0 tau.
        const double x = delta * pulse.tau();
        if (std::abs(x) < 1e-8) return kI * pulse.omega0() * pulse.tau() * (1.0 - 0.5 * kI * x);
        return pulse.omega0() * (1.0 - std::polar(1.0, -x)) / delta;
    }
    return evolve(pulse, delta, opts).alpha;
}

double entangling_phase(const PulseShape& pulse, double delta, const QuadratureOptions& opts) {
    return evolve(pulse, delta, opts).phase;
}

std::vector<cplx> trajectory_path(const PulseShape& pulse, double delta, int n_samples,
                                  int panels_per_interval) {
    if (n_samples < 2) throw std::invalid_argument("trajectory_path: need at least 2 samples");
    const auto& rule = GaussLegendre8::get();
    const std::vector<double> breaks = pulse.breakpoints();
    std::vector<cplx> path(n_samples);
    path[0] = 0.0;
    cplx acc{0.0, 0.0};
    const double dt = pulse.tau() / (n_samples - 1);
    for (int s = 1; s < n_samples; ++s) {
        const double t0 = (s - 1) * dt;
        const double t1 = s == n_samples - 1 ? pulse.tau() : s * dt;
        std::vector<double> cuts{t0};
        for (double b : breaks)
            if (b > t0 && b < t1) cuts.push_back(b);
        cuts.push_back(t1);
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double len = cuts[c + 1] - cuts[c];
            const int m = panels_per_interval;
            for (int p = 0; p < m; ++p) {
                const double a = cuts[c] + len * p / m;
                const double h2 = 0.5 * len / m;
                cplx sum{0.0, 0.0};
                for (int i = 0; i < GaussLegendre8::kOrder; ++i) {
                    const double t = a + h2 * (1.0 + rule.nodes[i]);
                    sum += rule.weights[i] * pulse.amplitude(t) * std::polar(1.0, -delta * t);
                }
                acc += kI * h2 * sum;
            }
        }
        path[s] = acc;
    }
    return path;
}

namespace {

void check_resonance(const GateCoupling& coupling, const DetuningContext& ctx) {
    for (const auto& m : coupling.modes) {
        const double d = ctx.mode_detuning(m.freq);
        if (std::abs(d) < kResonanceGuard) {
            std::ostringstream msg;
            msg << "sideband resonance: " << to_string(m.direction) << " mode " << m.index
                << " detuning " << angular_to_hz(d) << " Hz is within 100 Hz";
            throw ResonanceError(msg.str());
        }
    }
}

Trajectory trajectory_with(GridLadder& ladder, const GateCoupling& coupling, const DetuningContext& ctx) {
    check_resonance(coupling, ctx);
    Trajectory traj;
    traj.alpha.reserve(coupling.size());
    traj.phase.reserve(coupling.size());
    for (const auto& m : coupling.modes) {
        const ModeEvolution ev = ladder.evolve(ctx.mode_detuning(m.freq));
        traj.alpha.push_back(ev.alpha);
        traj.phase.push_back(ev.phase);
    }
    return traj;
}

}  // namespace

Trajectory compute_trajectory(const GateCoupling& coupling, const PulseShape& pulse,
                              const DetuningContext& ctx, const QuadratureOptions& opts) {
    GridLadder ladder(pulse, opts);
    return trajectory_with(ladder, coupling, ctx);
}

double rotation_angle(const GateCoupling& coupling, const Trajectory& traj) {
    double theta = 0.0;
    for (std::size_t k = 0; k < coupling.size(); ++k) theta += coupling.eta_product(k) * traj.phase[k];
    return theta;
}

double theta_at(const GateCoupling& coupling, const PulseShape& pulse, const DetuningContext& ctx,
                const QuadratureOptions& opts) {
    return rotation_angle(coupling, compute_trajectory(coupling, pulse, ctx, opts));
}

PhaseResult phase_and_derivative(const GateCoupling& coupling, const PulseShape& pulse,
                                 const DetuningContext& ctx, const QuadratureOptions& opts,
                                 bool second_derivative) {
    GridLadder ladder(pulse, opts);
    const double h = kPhaseDerivativeStep;
    auto theta = [&](double shift) {
        DetuningContext c = ctx;
        c.delta_c += shift;
        return rotation_angle(coupling, trajectory_with(ladder, coupling, c));
    };
    PhaseResult r;
    r.theta = theta(0.0);
    const double up = theta(h);
    const double down = theta(-h);
    r.dtheta = (up - down) / (2.0 * h);
    if (second_derivative) r.d2theta = (up - 2.0 * r.theta + down) / (h * h);
    return r;
}

}  // namespace msgate
