#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "msgate/constants.hpp"

namespace msgate {

enum class Direction { Axial, RadialA, RadialB };

enum class PulseKind { Square, TruncGaussian, SplineGaussian };

std::string to_string(Direction d);
std::string to_string(PulseKind k);
Direction direction_from_string(const std::string& s);
PulseKind pulse_kind_from_string(const std::string& s);

/// Pulse parameters as they appear in a config file (Hz and seconds).
struct PulseSpec {
    PulseKind kind = PulseKind::TruncGaussian;
    double omega0_hz = 100e3;  // trial peak Rabi rate / 2pi, rescaled by calibration
    double z_s = 25e-6;
    double tau_s = 200e-6;
    int n_knots = 13;
};

struct Tolerances {
    double quad_rel = 1e-10;
    double root_hz = 1.0;
};

struct TargetModes {
    Direction direction = Direction::RadialB;
    int k1 = 0;
    int k2 = 1;
};

struct SystemConfig {
    int n_ions = 3;
    std::optional<double> axial_freq_hz;
    std::optional<double> center_spacing_m;
    double radial_a_freq_hz = 2.52e6;
    double radial_b_freq_hz = 2.19e6;
    LaserGeometry geometry;
    /// Unset means default_target_pair(n_ions).
    std::optional<std::pair<int, int>> target_pair;
    TargetModes target_modes;
    PulseSpec pulse;
    Tolerances tol;
    PhysicalConstants constants;

    /// Target ions after applying the center-adjacent default.
    std::pair<int, int> resolved_pair() const;
};

/// Parse and validate. Throws ConfigError on schema or stability violations.
SystemConfig config_from_json(const nlohmann::json& j);
SystemConfig load_config(const std::filesystem::path& path);
SystemConfig parse_config(const std::string& text);

nlohmann::json to_json(const SystemConfig& cfg);

/// Throws ConfigError if the configuration is not physically usable.
void validate(const SystemConfig& cfg);

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const SystemConfig& cfg);

/// Ions whose separation defines the center spacing: the two middle ions for even
/// n, the middle ion and its right neighbor for odd n.
std::pair<int, int> center_pair(int n_ions);

/// Default gate ions, one on each side of the chain center: the two middle ions
/// for even n, the two neighbors of the middle ion for odd n.
std::pair<int, int> default_target_pair(int n_ions);

}  // namespace msgate
