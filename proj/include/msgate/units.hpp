#pragma once

#include <numbers>

namespace msgate {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double hz_to_angular(double f_hz) { return kTwoPi * f_hz; }

/// Angular frequency (rad/s) to ordinary frequency (Hz).
constexpr double angular_to_hz(double w) { return w / kTwoPi; }

constexpr double khz(double f) { return hz_to_angular(f * 1e3); }
constexpr double mhz(double f) { return hz_to_angular(f * 1e6); }

constexpr double us(double t) { return t * 1e-6; }

}  // namespace msgate
