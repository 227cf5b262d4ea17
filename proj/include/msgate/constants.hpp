#pragma once

#include <numbers>

namespace msgate {

/// CODATA 2018 values.
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;   // kg
inline constexpr double kElementaryCharge = 1.602176634e-19;   // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kHbar = 1.054571817e-34;               // J s

inline constexpr double kYb171MassAmu = 170.936;

struct PhysicalConstants {
    double ion_mass = kYb171MassAmu * kAtomicMassUnit;
    /// e^2 / (4 pi eps0), kg m^3 / s^2
    double coulomb_coeff =
        kElementaryCharge * kElementaryCharge / (4.0 * std::numbers::pi * kVacuumPermittivity);
    double hbar = kHbar;
};

struct LaserGeometry {
    double wavelength = 355e-9;   // m
    double wavevector_factor = 2.0;
    /// Angle between the effective k-vector and the radial-a axis; the k-vector
    /// lies in the radial plane, so the angle to radial-b is pi/2 minus this.
    double projection_angle = std::numbers::pi / 4.0;

    double delta_k() const { return wavevector_factor * 2.0 * std::numbers::pi / wavelength; }
};

}  // namespace msgate
