#include "msgate/oracle.hpp"

#include <cmath>
#include <array>
#include <sstream>

#include "msgate/error_metrics.hpp"
#include "msgate/errors.hpp"

namespace msgate {

namespace {

using State = std::vector<cplx>;
constexpr cplx kI{0.0, 1.0};

struct Layout {
    std::size_t n_modes;
    std::size_t levels;             // n_max + 1
    std::vector<std::size_t> stride;
    std::size_t motion_dim;

    std::size_t fock(std::size_t idx, std::size_t k) const { return (idx / stride[k]) % levels; }
};

Layout make_layout(std::size_t n_modes, int n_max) {
    Layout l{n_modes, static_cast<std::size_t>(n_max) + 1, {}, 1};
    l.stride.resize(n_modes);
    for (std::size_t k = n_modes; k-- > 0;) {
        l.stride[k] = l.motion_dim;
        l.motion_dim *= l.levels;
    }
    return l;
}

/// out = -i H(t) psi.
void apply_generator(const Layout& L, const std::vector<double>& g1, const std::vector<double>& g2,
                     const std::vector<double>& delta, const std::vector<double>& sqrt_n, double omega,
                     double t, const State& psi, State& out) {
    std::fill(out.begin(), out.end(), cplx{});
    if (omega == 0.0) return;
    const std::size_t M = L.motion_dim;
    for (std::size_t k = 0; k < L.n_modes; ++k) {
        // -i H = i Omega S_k (a e^{i d t} + a^dag e^{-i d t})
        const cplx up = kI * omega * std::polar(1.0, -delta[k] * t);  // a^dag part
        const cplx dn = kI * omega * std::polar(1.0, delta[k] * t);   // a part
        const std::size_t s = L.stride[k];
        const std::size_t block = s * L.levels;
        // sigma_y: <0|sy|1> = -i, <1|sy|0> = i. Half couplings g = eta/2.
        for (std::size_t q = 0; q < 4; ++q) {
            const std::size_t q1 = q >> 1, q2 = q & 1;
            const std::size_t p1 = ((q1 ^ 1) << 1) | q2;
            const std::size_t p2 = (q1 << 1) | (q2 ^ 1);
            const cplx c1 = g1[k] * (q1 == 0 ? -kI : kI);
            const cplx c2 = g2[k] * (q2 == 0 ? -kI : kI);
            const cplx* a = psi.data() + p1 * M;
            const cplx* b = psi.data() + p2 * M;
            cplx* o = out.data() + q * M;
            for (std::size_t base = 0; base < M; base += block) {
                for (std::size_t n = 0; n < L.levels; ++n) {
                    const std::size_t row = base + n * s;
                    if (n + 1 < L.levels) {
                        const cplx f1 = dn * sqrt_n[n + 1] * c1, f2 = dn * sqrt_n[n + 1] * c2;
                        for (std::size_t i = 0; i < s; ++i) o[row + i] += f1 * a[row + s + i] + f2 * b[row + s + i];
                    }
                    if (n > 0) {
                        const cplx f1 = up * sqrt_n[n] * c1, f2 = up * sqrt_n[n] * c2;
                        for (std::size_t i = 0; i < s; ++i) o[row + i] += f1 * a[row - s + i] + f2 * b[row - s + i];
                    }
                }
            }
        }
    }
}

/// Analytic state on the truncated space for propagator exp(sign * i B S^2) D(S alpha).
State analytic_state(const Layout& L, const SpinEigensystem& eig, const std::vector<std::size_t>& modes,
                     const std::vector<cplx>& alpha, const std::vector<double>& phase, double sign) {
    State psi(4 * L.motion_dim);
    std::vector<double> log_fact(L.levels, 0.0);
    for (std::size_t n = 1; n < L.levels; ++n) log_fact[n] = log_fact[n - 1] + std::log(double(n));
    for (std::size_t s = 0; s < 4; ++s) {
        double ph = 0.0;
        std::vector<cplx> beta(L.n_modes);
        for (std::size_t j = 0; j < L.n_modes; ++j) {
            const double lam = eig.lambda[modes[j]][s];
            ph += phase[j] * lam * lam;
            beta[j] = lam * alpha[j];
        }
        const cplx spin_amp = eig.c[s] * std::polar(1.0, sign * ph);
        for (std::size_t m = 0; m < L.motion_dim; ++m) {
            cplx amp = spin_amp;
            for (std::size_t j = 0; j < L.n_modes; ++j) {
                const std::size_t n = L.fock(m, j);
                const double b2 = std::norm(beta[j]);
                amp *= std::exp(-0.5 * b2 - 0.5 * log_fact[n]) * std::pow(beta[j], static_cast<int>(n));
            }
            for (std::size_t q = 0; q < 4; ++q) psi[q * L.motion_dim + m] += eig.basis[q][s] * amp;
        }
    }
    return psi;
}

double overlap_sq(const State& a, const State& b) {
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return std::norm(acc);
}

}  // namespace

OracleReport run_oracle(const GateCoupling& coupling, const PulseShape& pulse, double delta_c,
                        const OracleSpec& spec) {
    if (spec.n_max < 5) throw ConfigError("oracle: n_max must be at least 5");
    if (spec.steps < 200000) throw ConfigError("oracle: at least 200000 steps are required");
    if (spec.modes.empty() || spec.modes.size() > 3) throw ConfigError("oracle: select 1 to 3 modes");
    for (std::size_t k : spec.modes)
        if (k >= coupling.size()) throw ConfigError("oracle: mode index out of range");

    const Layout L = make_layout(spec.modes.size(), spec.n_max);
    const SpinEigensystem eig = spin_eigensystem(coupling);
    const DetuningContext ctx{delta_c, spec.delta_omega};

    std::vector<double> g1, g2, delta;
    for (std::size_t k : spec.modes) {
        g1.push_back(0.5 * coupling.modes[k].eta1);
        g2.push_back(0.5 * coupling.eta2_effective(k));
        delta.push_back(ctx.mode_detuning(coupling.modes[k].freq));
    }
    std::vector<double> sqrt_n(L.levels);
    for (std::size_t n = 0; n < L.levels; ++n) sqrt_n[n] = std::sqrt(double(n));

    const std::size_t dim = 4 * L.motion_dim;
    State psi(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    psi[0] = 1.0;  // |00>|0...0>

    const double tau = pulse.tau();
    const double h = tau / static_cast<double>(spec.steps);
    auto gen = [&](double t, const State& in, State& out) {
        apply_generator(L, g1, g2, delta, sqrt_n, pulse.amplitude(t), t, in, out);
    };
    for (long i = 0; i < spec.steps; ++i) {
        const double t = i * h;
        gen(t, psi, k1);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = psi[j] + 0.5 * h * k1[j];
        gen(t + 0.5 * h, tmp, k2);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = psi[j] + 0.5 * h * k2[j];
        gen(t + 0.5 * h, tmp, k3);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = psi[j] + h * k3[j];
        gen(t + h, tmp, k4);
        for (std::size_t j = 0; j < dim; ++j) psi[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }

    OracleReport r;
    r.modes = spec.modes;
    r.dimension = dim;
    for (const cplx& v : psi) r.norm += std::norm(v);
    for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t m = 0; m < L.motion_dim; ++m)
            for (std::size_t j = 0; j < L.n_modes; ++j)
                if (L.fock(m, j) + 2 >= L.levels) {
                    r.leakage += std::norm(psi[q * L.motion_dim + m]);
                    break;
                }
    if (r.leakage > spec.leakage_limit) {
        std::ostringstream msg;
        msg << "oracle: Fock truncation at n_max=" << spec.n_max << " leaks " << r.leakage
            << " (limit " << spec.leakage_limit << "); raise n_max";
        throw Error(msg.str());
    }

    for (std::size_t j = 0; j < L.n_modes; ++j) {
        const ModeEvolution ev = evolve(pulse, delta[j]);
        r.alpha_analytic.push_back(ev.alpha);
        r.phase_analytic.push_back(ev.phase);
        r.theta_analytic += coupling.eta_product(spec.modes[j]) * ev.phase;
    }
    r.overlap = overlap_sq(analytic_state(L, eig, spec.modes, r.alpha_analytic, r.phase_analytic, -1.0), psi);
    r.overlap_opposite =
        overlap_sq(analytic_state(L, eig, spec.modes, r.alpha_analytic, r.phase_analytic, +1.0), psi);

    // Project onto spin eigenstates: chi_s(m) = sum_q <s|q> psi(q, m).
    std::array<State, 4> chi;
    for (std::size_t s = 0; s < 4; ++s) {
        chi[s].assign(L.motion_dim, cplx{});
        for (std::size_t q = 0; q < 4; ++q)
            for (std::size_t m = 0; m < L.motion_dim; ++m)
                chi[s][m] += std::conj(eig.basis[q][s]) * psi[q * L.motion_dim + m];
    }
    for (std::size_t j = 0; j < L.n_modes; ++j) {
        std::size_t best = 0;
        for (std::size_t s = 1; s < 4; ++s)
            if (std::abs(eig.lambda[spec.modes[j]][s]) > std::abs(eig.lambda[spec.modes[j]][best])) best = s;
        cplx mean{};
        double weight = 0.0;
        const std::size_t st = L.stride[j];
        for (std::size_t m = 0; m < L.motion_dim; ++m) {
            weight += std::norm(chi[best][m]);
            const std::size_t n = L.fock(m, j);
            if (n + 1 < L.levels) mean += std::conj(chi[best][m]) * sqrt_n[n + 1] * chi[best][m + st];
        }
        r.alpha_numeric.push_back(mean / weight / eig.lambda[spec.modes[j]][best]);
    }
    // Vacuum amplitudes carry exp(-i sum B lambda_s^2) c_s; theta = phi(+-) - phi(++).
    const cplx v_pp = chi[0][0] / eig.c[0];
    const cplx v_pm = chi[1][0] / eig.c[1];
    r.theta_numeric = std::arg(v_pm / v_pp);
    return r;
}

OracleReport run_oracle(const GateDesign& design, const OracleSpec& spec) {
    OracleSpec s = spec;
    if (s.modes.empty()) {
        const Direction dir = design.target_modes.direction;
        s.modes = {design.coupling.find(dir, design.target_modes.k1),
                   design.coupling.find(dir, design.target_modes.k2)};
    }
    return run_oracle(design.coupling, design.pulse, design.delta_c, s);
}

}  // namespace msgate
