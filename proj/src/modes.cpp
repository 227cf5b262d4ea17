#include "msgate/modes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "msgate/errors.hpp"
#include "msgate/units.hpp"

namespace msgate {

namespace {

std::vector<std::string> radial_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t k = 0; k < n; ++k) labels[k] = "mode" + std::to_string(k);
    if (n == 2) {
        labels[0] = "tilt";
    } else {
        labels[0] = "zigzag";
        labels[n - 2] = "tilt";
    }
    labels[n - 1] = "com";
    return labels;
}

void check_nondegenerate(const std::vector<double>& freqs, Direction d) {
    for (std::size_t k = 0; k + 1 < freqs.size(); ++k) {
        if (std::abs(freqs[k + 1] - freqs[k]) < 1e-6 * freqs[k])
            throw Error("degenerate " + to_string(d) + " modes " + std::to_string(k) + " and " +
                        std::to_string(k + 1));
    }
}

}  // namespace

ModeStructure axial_modes(const IonChain& chain) {
    const std::size_t n = chain.u.size();
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 1.0;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == i) continue;
            const double c = 2.0 / std::pow(std::abs(chain.u[i] - chain.u[m]), 3);
            diag += c;
            a(i, m) = -c;
        }
        a(i, i) = diag;
    }
    SymmetricEigen eig = jacobi_eigen(a);

    ModeStructure ms;
    ms.direction = Direction::Axial;
    ms.hessian_eigenvalues = eig.values;
    ms.participation = std::move(eig.vectors);
    for (double mu : ms.hessian_eigenvalues) ms.freqs.push_back(chain.axial_angular_freq * std::sqrt(mu));
    ms.labels.resize(n);
    for (std::size_t k = 0; k < n; ++k) ms.labels[k] = "mode" + std::to_string(k);
    ms.labels[0] = "com";
    if (n > 1) ms.labels[1] = "breathing";
    check_nondegenerate(ms.freqs, ms.direction);
    return ms;
}

ModeStructure radial_modes(const IonChain& chain, double trap_angular_freq, Direction direction) {
    if (direction == Direction::Axial) throw std::invalid_argument("radial_modes: axial direction");
    const std::size_t n = chain.u.size();
    const double beta = trap_angular_freq / chain.axial_angular_freq;
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = beta * beta;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == i) continue;
            const double c = 1.0 / std::pow(std::abs(chain.u[i] - chain.u[m]), 3);
            diag -= c;
            a(i, m) = c;
        }
        a(i, i) = diag;
    }
    SymmetricEigen eig = jacobi_eigen(a);
    if (!(eig.values.front() > 0.0)) {
        std::ostringstream msg;
        msg << "zig-zag instability in " << to_string(direction)
            << ": lowest radial Hessian eigenvalue " << eig.values.front();
        throw InstabilityError(msg.str(), eig.values.front());
    }

    ModeStructure ms;
    ms.direction = direction;
    ms.hessian_eigenvalues = eig.values;
    ms.participation = std::move(eig.vectors);
    for (double mu : ms.hessian_eigenvalues) ms.freqs.push_back(chain.axial_angular_freq * std::sqrt(mu));
    ms.labels = radial_labels(n);
    check_nondegenerate(ms.freqs, direction);
    return ms;
}

std::size_t GateCoupling::find(Direction d, int index) const {
    for (std::size_t k = 0; k < modes.size(); ++k)
        if (modes[k].direction == d && modes[k].index == index) return k;
    throw std::out_of_range("GateCoupling::find: no " + to_string(d) + " mode " + std::to_string(index));
}

GateCoupling gate_coupling(const ModeStructure& radial_a, const ModeStructure& radial_b,
                           const LaserGeometry& geometry, const PhysicalConstants& constants,
                           std::pair<int, int> pair, bool even_flip) {
    GateCoupling gc;
    gc.pair = pair;
    gc.even_flip = even_flip;
    const double dk = geometry.delta_k();
    for (const ModeStructure* ms : {&radial_a, &radial_b}) {
        const int n = static_cast<int>(ms->size());
        if (pair.first < 0 || pair.second < 0 || pair.first >= n || pair.second >= n)
            throw std::out_of_range("gate_coupling: target ion out of range");
        const double proj = ms->direction == Direction::RadialA ? std::cos(geometry.projection_angle)
                                                                : std::sin(geometry.projection_angle);
        for (int k = 0; k < n; ++k) {
            const double nu = ms->freqs[k];
            const double scale = dk * proj * std::sqrt(constants.hbar / (2.0 * constants.ion_mass * nu));
            gc.modes.push_back({ms->direction, k, nu, scale * ms->participation(pair.first, k),
                                scale * ms->participation(pair.second, k)});
        }
    }
    return gc;
}

std::pair<ModeStructure, ModeStructure> radial_mode_pair(const SystemConfig& cfg, const IonChain& chain) {
    return {radial_modes(chain, hz_to_angular(cfg.radial_a_freq_hz), Direction::RadialA),
            radial_modes(chain, hz_to_angular(cfg.radial_b_freq_hz), Direction::RadialB)};
}

std::string mode_table_csv(const std::vector<ModeStructure>& structures) {
    std::ostringstream out;
    out.precision(12);
    const std::size_t n = structures.empty() ? 0 : structures.front().size();
    out << "direction,index,label,freq_hz";
    for (std::size_t i = 0; i < n; ++i) out << ",b" << i;
    out << '\n';
    for (const auto& ms : structures) {
        for (std::size_t k = 0; k < ms.size(); ++k) {
            out << to_string(ms.direction) << ',' << k << ',' << ms.labels[k] << ','
                << angular_to_hz(ms.freqs[k]);
            for (std::size_t i = 0; i < ms.size(); ++i) out << ',' << ms.participation(i, k);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace msgate
