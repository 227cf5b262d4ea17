#include "msgate/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "msgate/config.hpp"
#include "msgate/errors.hpp"
#include "msgate/linalg.hpp"
#include "msgate/units.hpp"

namespace msgate {

namespace {

std::vector<double> gradient(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        double gi = u[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            gi -= std::copysign(1.0 / (d * d), d);
        }
        g[i] = gi;
    }
    return g;
}

Matrix hessian(const std::vector<double>& u) {
    const std::size_t n = u.size();
    Matrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double c = 2.0 / std::pow(std::abs(u[i] - u[j]), 3);
            diag += c;
            h(i, j) = -c;
        }
        h(i, i) = diag;
    }
    return h;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool ascending(const std::vector<double>& u) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (!(u[i] > u[i - 1])) return false;
    return true;
}

void symmetrize(std::vector<double>& u) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double a = 0.5 * (u[n - 1 - i] - u[i]);
        u[i] = -a;
        u[n - 1 - i] = a;
    }
    if (n % 2 == 1) u[n / 2] = 0.0;
}

}  // namespace

double force_residual(const std::vector<double>& u) { return max_abs(gradient(u)); }

std::vector<double> equilibrium_positions(int n, int max_iterations) {
    if (n < 2) throw std::invalid_argument("equilibrium_positions: need at least 2 ions");

    const double half_width = std::pow(static_cast<double>(n), 0.56);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = -half_width + 2.0 * half_width * i / (n - 1);

    double residual = force_residual(u);
    for (int it = 0; it < max_iterations && residual > 1e-13; ++it) {
        std::vector<double> g = gradient(u);
        for (double& x : g) x = -x;
        const std::vector<double> step = solve_linear(hessian(u), g);

        double damping = 1.0;
        std::vector<double> trial(n);
        for (int tries = 0; tries < 60; ++tries, damping *= 0.5) {
            for (int i = 0; i < n; ++i) trial[i] = u[i] + damping * step[i];
            if (ascending(trial) && force_residual(trial) < residual * (1.0 - 1e-4 * damping))
                break;
            if (residual < 1e-11 && ascending(trial)) break;  // at round-off level
        }
        u = trial;
        symmetrize(u);
        residual = force_residual(u);
    }
    if (!(residual <= 1e-12))
        throw ConvergenceError("equilibrium_positions: Newton did not converge for n=" +
                               std::to_string(n) + " (residual " + std::to_string(residual) + ")");
    return u;
}

double length_scale(double axial_angular_freq, const PhysicalConstants& c) {
    return std::cbrt(c.coulomb_coeff / (c.ion_mass * axial_angular_freq * axial_angular_freq));
}

double axial_freq_for_center_spacing(int n, double center_spacing, const PhysicalConstants& c) {
    if (!(center_spacing > 0.0))
        throw std::invalid_argument("axial_freq_for_center_spacing: spacing must be positive");
    const std::vector<double> u = equilibrium_positions(n);
    const auto [a, b] = center_pair(n);
    const double l = center_spacing / (u[b] - u[a]);
    return std::sqrt(c.coulomb_coeff / (c.ion_mass * l * l * l));
}

IonChain make_chain(int n, double axial_angular_freq, const PhysicalConstants& c) {
    IonChain chain;
    chain.n = n;
    chain.axial_angular_freq = axial_angular_freq;
    chain.length_scale = length_scale(axial_angular_freq, c);
    chain.u = equilibrium_positions(n);
    chain.x.resize(n);
    for (int i = 0; i < n; ++i) chain.x[i] = chain.length_scale * chain.u[i];
    return chain;
}

double IonChain::center_spacing() const {
    const auto [a, b] = center_pair(n);
    return x[b] - x[a];
}

IonChain build_chain(const SystemConfig& cfg) {
    const double wz = cfg.axial_freq_hz
                          ? hz_to_angular(*cfg.axial_freq_hz)
                          : axial_freq_for_center_spacing(cfg.n_ions, *cfg.center_spacing_m,
                                                          cfg.constants);
    return make_chain(cfg.n_ions, wz, cfg.constants);
}

}  // namespace msgate
