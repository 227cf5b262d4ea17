#pragma once

#include <vector>

#include "msgate/constants.hpp"

namespace msgate {

struct SystemConfig;

/// Equilibrium of N ions in a harmonic axial well.
struct IonChain {
    int n = 0;
    double axial_angular_freq = 0.0;  // rad/s, axial center-of-mass mode
    double length_scale = 0.0;        // m, l^3 = k_e / (m w_z^2)
    std::vector<double> u;            // dimensionless, ascending, zero-sum
    std::vector<double> x;            // m

    /// Physical separation of the two center ions (see center_pair()).
    double center_spacing() const;
};

/// Stationary point of V(u) = sum u_i^2/2 + sum_{i<j} 1/|u_i - u_j|.
/// Throws ConvergenceError if Newton fails within max_iterations.
std::vector<double> equilibrium_positions(int n, int max_iterations = 200);

/// Largest |dV/du_i| at u.
double force_residual(const std::vector<double>& u);

double length_scale(double axial_angular_freq, const PhysicalConstants& c);

/// Axial COM angular frequency that puts the two center ions center_spacing apart.
double axial_freq_for_center_spacing(int n, double center_spacing, const PhysicalConstants& c = {});

IonChain make_chain(int n, double axial_angular_freq, const PhysicalConstants& c = {});

IonChain build_chain(const SystemConfig& cfg);

}  // namespace msgate
