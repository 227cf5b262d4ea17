#pragma once

#include <string>
#include <utility>
#include <vector>

#include "msgate/chain.hpp"
#include "msgate/config.hpp"
#include "msgate/linalg.hpp"

namespace msgate {

/// Normal modes of one principal direction.
struct ModeStructure {
    Direction direction = Direction::RadialB;
    std::vector<double> freqs;     // rad/s, ascending
    std::vector<double> hessian_eigenvalues;  // dimensionless, in units of w_z^2
    Matrix participation;          // column k is mode k
    std::vector<std::string> labels;

    std::size_t size() const { return freqs.size(); }
    double participation_of(int ion, int mode) const { return participation(ion, mode); }
    /// nu_1 - nu_0.
    double lowest_splitting() const { return freqs.at(1) - freqs.at(0); }
};

ModeStructure axial_modes(const IonChain& chain);

/// Throws InstabilityError when the lowest eigenvalue of the radial Hessian is not
/// positive (zig-zag transition).
ModeStructure radial_modes(const IonChain& chain, double trap_angular_freq,
                           Direction direction = Direction::RadialB);

struct CoupledMode {
    Direction direction;
    int index;         // within its direction
    double freq;       // rad/s
    double eta1;
    double eta2;       // before the even-N phase flip
};

/// Lamb-Dicke couplings of a target ion pair to every radial mode.
struct GateCoupling {
    std::pair<int, int> pair;
    std::vector<CoupledMode> modes;  // radial-a modes, then radial-b modes
    bool even_flip = false;

    std::size_t size() const { return modes.size(); }
    /// eta2 with the pi laser-phase flip applied when even_flip is set.
    double eta2_effective(std::size_t k) const { return even_flip ? -modes[k].eta2 : modes[k].eta2; }
    double eta_product(std::size_t k) const { return modes[k].eta1 * eta2_effective(k); }
    /// Position of (direction, index) within modes; throws if absent.
    std::size_t find(Direction d, int index) const;
};

/// eta_{j,k} = b_{j,k} dk proj sqrt(hbar / (2 m nu_k)), with proj = cos(angle) for
/// radial-a and sin(angle) for radial-b.
GateCoupling gate_coupling(const ModeStructure& radial_a, const ModeStructure& radial_b,
                           const LaserGeometry& geometry, const PhysicalConstants& constants,
                           std::pair<int, int> pair, bool even_flip);

/// Both radial directions for a config, in the order (radial-a, radial-b).
std::pair<ModeStructure, ModeStructure> radial_mode_pair(const SystemConfig& cfg, const IonChain& chain);

/// Rows: direction, index, label, freq_hz, then one participation column per ion.
std::string mode_table_csv(const std::vector<ModeStructure>& structures);

}  // namespace msgate
