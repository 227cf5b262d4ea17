#include "msgate/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "msgate/errors.hpp"
#include "msgate/linalg.hpp"

namespace msgate {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

SpinEigensystem spin_eigensystem(const GateCoupling& coupling) {
    SpinEigensystem eig;
    eig.lambda.reserve(coupling.size());
    for (std::size_t k = 0; k < coupling.size(); ++k) {
        const double e1 = coupling.modes[k].eta1;
        const double e2 = coupling.eta2_effective(k);
        std::array<double, 4> l{};
        for (int s = 0; s < 4; ++s) l[s] = 0.5 * (e1 * SpinEigensystem::kS1[s] + e2 * SpinEigensystem::kS2[s]);
        eig.lambda.push_back(l);
    }

    const double r = 1.0 / std::numbers::sqrt2;
    // <q|y_s> for one qubit: q=0 -> 1/sqrt2, q=1 -> i s / sqrt2
    auto single = [&](int q, int s) { return q == 0 ? cplx(r, 0.0) : kI * static_cast<double>(s) * r; };
    for (int q = 0; q < 4; ++q)
        for (int s = 0; s < 4; ++s)
            eig.basis[q][s] = single(q >> 1, SpinEigensystem::kS1[s]) * single(q & 1, SpinEigensystem::kS2[s]);

    for (int s = 0; s < 4; ++s) {
        eig.c[s] = std::conj(eig.basis[0][s]);
        eig.d[s] = r * (eig.basis[0][s] - kI * eig.basis[3][s]);
    }
    return eig;
}

DisplacementError displacement_error(const SpinEigensystem& eig, const Trajectory& traj) {
    DisplacementError out;
    out.per_mode.reserve(eig.lambda.size());
    for (std::size_t k = 0; k < eig.lambda.size(); ++k) {
        const double a2 = std::norm(traj.alpha[k]);
        double overlap = 0.0;
        for (double l : eig.lambda[k]) overlap += 0.25 * std::exp(-0.5 * l * l * a2);
        const double e = 1.0 - overlap * overlap;
        out.per_mode.push_back(std::max(e, 0.0));
        out.total += out.per_mode.back();
    }
    return out;
}

double rotation_error(double theta) {
    const double d = theta - std::numbers::pi / 2.0;
    return 0.25 * d * d;
}

namespace {

/// Accumulated phase sum_k B_k lambda_{s,k}^2 and log motional overlap for state s.
struct SectorFactors {
    std::array<double, 4> phase{};
    std::array<double, 4> log_overlap{};
};

SectorFactors sector_factors(const SpinEigensystem& eig, const Trajectory& traj) {
    SectorFactors f;
    for (std::size_t k = 0; k < eig.lambda.size(); ++k) {
        const double a2 = std::norm(traj.alpha[k]);
        for (int s = 0; s < 4; ++s) {
            const double l = eig.lambda[k][s];
            f.phase[s] += traj.phase[k] * l * l;
            f.log_overlap[s] -= 0.5 * l * l * a2;
        }
    }
    return f;
}

}  // namespace

double exact_fidelity(const SpinEigensystem& eig, const Trajectory& traj) {
    const SectorFactors f = sector_factors(eig, traj);
    cplx amp{0.0, 0.0};
    for (int s = 0; s < 4; ++s)
        amp += eig.d[s] * eig.c[s] * std::polar(std::exp(f.log_overlap[s]), -f.phase[s]);
    return std::clamp(std::norm(amp), 0.0, 1.0);
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
    // Real symmetric embedding [[Re, -Im], [Im, Re]] has each eigenvalue twice.
    Matrix big(8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            big(i, j) = big(i + 4, j + 4) = m[i][j].real();
            big(i + 4, j) = m[i][j].imag();
            big(i, j + 4) = -m[i][j].imag();
        }
    const SymmetricEigen eig = jacobi_eigen(big);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = 0.5 * (eig.values[2 * i] + eig.values[2 * i + 1]);
    return out;
}

Mat4 reduced_density_matrix(const SpinEigensystem& eig, const Trajectory& traj) {
    Mat4 in_eigenbasis{};
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
            double phase = 0.0;
            double log_mag = 0.0;
            for (std::size_t k = 0; k < eig.lambda.size(); ++k) {
                const double ls = eig.lambda[k][s];
                const double lt = eig.lambda[k][t];
                phase -= traj.phase[k] * (ls * ls - lt * lt);
                log_mag -= 0.5 * std::norm(traj.alpha[k]) * (ls - lt) * (ls - lt);
            }
            in_eigenbasis[s][t] = eig.c[s] * std::conj(eig.c[t]) * std::polar(std::exp(log_mag), phase);
        }

    Mat4 rho{};
    for (int q = 0; q < 4; ++q)
        for (int p = 0; p < 4; ++p) {
            cplx v{0.0, 0.0};
            for (int s = 0; s < 4; ++s)
                for (int t = 0; t < 4; ++t)
                    v += eig.basis[q][s] * in_eigenbasis[s][t] * std::conj(eig.basis[p][t]);
            rho[q][p] = v;
        }

    const auto ev = hermitian_eigenvalues(rho);
    if (ev.front() < -1e-8) {
        std::ostringstream msg;
        msg << "reduced density matrix not positive: eigenvalue " << ev.front();
        throw Error(msg.str());
    }
    return rho;
}

ErrorBreakdown error_breakdown(const GateCoupling& coupling, const Trajectory& traj) {
    const SpinEigensystem eig = spin_eigensystem(coupling);
    ErrorBreakdown out;
    DisplacementError d = displacement_error(eig, traj);
    out.eps_d_per_mode = std::move(d.per_mode);
    out.eps_d = d.total;
    out.theta = rotation_angle(coupling, traj);
    out.eps_r = rotation_error(out.theta);
    out.eps_s = out.eps_d + out.eps_r;
    out.fidelity = exact_fidelity(eig, traj);
    out.rho = reduced_density_matrix(eig, traj);
    return out;
}

double parity_after_analysis(const Mat4& rho, double phi) {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::array<std::array<cplx, 2>, 2> rot{{{cplx(r, 0.0), -kI * r * std::polar(1.0, -phi)},
                                                  {-kI * r * std::polar(1.0, phi), cplx(r, 0.0)}}};
    Mat4 u{};
    for (int q = 0; q < 4; ++q)
        for (int p = 0; p < 4; ++p) u[q][p] = rot[q >> 1][p >> 1] * rot[q & 1][p & 1];

    double parity = 0.0;
    constexpr std::array<double, 4> kZZ{1.0, -1.0, -1.0, 1.0};
    for (int q = 0; q < 4; ++q) {
        cplx diag{0.0, 0.0};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) diag += u[q][a] * rho[a][b] * std::conj(u[q][b]);
        parity += kZZ[q] * diag.real();
    }
    return parity;
}

ParityScan parity_scan(const Mat4& rho, const std::vector<double>& phi_grid) {
    if (phi_grid.size() < 8) throw std::invalid_argument("parity_scan: need at least 8 phases");
    ParityScan scan;
    scan.phi = phi_grid;
    scan.parity.reserve(phi_grid.size());
    for (double phi : phi_grid) scan.parity.push_back(parity_after_analysis(rho, phi));

    const auto [lo, hi] = std::minmax_element(scan.parity.begin(), scan.parity.end());
    if (*hi - *lo < 1e-12) {
        scan.degenerate = true;
        scan.offset = *lo;
        return scan;
    }

    Matrix normal(3);
    std::vector<double> rhs(3, 0.0);
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        const std::array<double, 3> basis{std::sin(2.0 * phi_grid[i]), std::cos(2.0 * phi_grid[i]), 1.0};
        for (int a = 0; a < 3; ++a) {
            rhs[a] += basis[a] * scan.parity[i];
            for (int b = 0; b < 3; ++b) normal(a, b) += basis[a] * basis[b];
        }
    }
    const std::vector<double> coef = solve_linear(normal, rhs);
    scan.amplitude = std::hypot(coef[0], coef[1]);
    scan.phase = std::atan2(coef[1], coef[0]);
    scan.offset = coef[2];
    return scan;
}

std::vector<double> uniform_phases(int n) {
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = 2.0 * std::numbers::pi * i / n;
    return phi;
}

double parity_fidelity_estimate(const Mat4& rho, double amplitude) {
    return 0.5 * (rho[0][0].real() + rho[3][3].real()) + 0.5 * amplitude;
}

}  // namespace msgate
