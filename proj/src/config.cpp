#include "msgate/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "msgate/chain.hpp"
#include "msgate/errors.hpp"
#include "msgate/units.hpp"

namespace msgate {

using nlohmann::json;

std::string to_string(Direction d) {
    switch (d) {
        case Direction::Axial: return "axial";
        case Direction::RadialA: return "radial_a";
        case Direction::RadialB: return "radial_b";
    }
    return "?";
}

std::string to_string(PulseKind k) {
    switch (k) {
        case PulseKind::Square: return "square";
        case PulseKind::TruncGaussian: return "gaussian";
        case PulseKind::SplineGaussian: return "spline";
    }
    return "?";
}

Direction direction_from_string(const std::string& s) {
    if (s == "axial") return Direction::Axial;
    if (s == "radial_a" || s == "ra") return Direction::RadialA;
    if (s == "radial_b" || s == "rb") return Direction::RadialB;
    throw ConfigError("unknown mode direction '" + s + "'");
}

PulseKind pulse_kind_from_string(const std::string& s) {
    if (s == "square") return PulseKind::Square;
    if (s == "gaussian" || s == "trunc_gaussian") return PulseKind::TruncGaussian;
    if (s == "spline" || s == "spline_gaussian") return PulseKind::SplineGaussian;
    throw ConfigError("unknown pulse type '" + s + "'");
}

std::pair<int, int> center_pair(int n_ions) {
    if (n_ions % 2 == 0) return {n_ions / 2 - 1, n_ions / 2};
    return {(n_ions - 1) / 2, (n_ions + 1) / 2};
}

std::pair<int, int> default_target_pair(int n_ions) {
    if (n_ions % 2 == 0) return center_pair(n_ions);
    const int c = n_ions / 2;
    return {c - 1, c + 1};
}

std::pair<int, int> SystemConfig::resolved_pair() const {
    return target_pair ? *target_pair : default_target_pair(n_ions);
}

namespace {

const std::set<std::string> kTopKeys = {
    "n_ions",          "axial_freq_hz",     "center_spacing_m",     "radial_a_freq_hz",
    "radial_b_freq_hz", "wavelength_m",     "wavevector_factor",    "projection_angle_rad",
    "target_pair",     "target_modes",      "pulse",                "tol"};

double positive_number(const json& j, const char* key) {
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    double v = j.at(key).get<double>();
    if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string(key) + " must be positive");
    return v;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

}  // namespace

SystemConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!kTopKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    for (const char* key : {"n_ions", "radial_a_freq_hz", "radial_b_freq_hz"}) {
        if (!j.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    }

    SystemConfig cfg;
    if (!j.at("n_ions").is_number_integer()) throw ConfigError("n_ions must be an integer");
    cfg.n_ions = j.at("n_ions").get<int>();
    if (cfg.n_ions < 2) throw ConfigError("n_ions must be at least 2 (a gate needs an ion pair)");

    const bool has_axial = j.contains("axial_freq_hz");
    const bool has_spacing = j.contains("center_spacing_m");
    if (has_axial == has_spacing)
        throw ConfigError("exactly one of axial_freq_hz or center_spacing_m is required");
    if (has_axial) cfg.axial_freq_hz = positive_number(j, "axial_freq_hz");
    if (has_spacing) cfg.center_spacing_m = positive_number(j, "center_spacing_m");

    cfg.radial_a_freq_hz = positive_number(j, "radial_a_freq_hz");
    cfg.radial_b_freq_hz = positive_number(j, "radial_b_freq_hz");

    if (j.contains("wavelength_m")) cfg.geometry.wavelength = positive_number(j, "wavelength_m");
    if (j.contains("wavevector_factor"))
        cfg.geometry.wavevector_factor = positive_number(j, "wavevector_factor");
    cfg.geometry.projection_angle =
        get_or<double>(j, "projection_angle_rad", cfg.geometry.projection_angle);

    if (j.contains("target_pair")) {
        const auto& tp = j.at("target_pair");
        if (!tp.is_array() || tp.size() != 2 || !tp[0].is_number_integer() ||
            !tp[1].is_number_integer())
            throw ConfigError("target_pair must be a list of two ion indices");
        cfg.target_pair = std::pair{tp[0].get<int>(), tp[1].get<int>()};
    }

    if (j.contains("target_modes")) {
        const auto& tm = j.at("target_modes");
        if (!tm.is_object()) throw ConfigError("target_modes must be an object");
        cfg.target_modes.direction =
            direction_from_string(get_or<std::string>(tm, "direction", "radial_b"));
        cfg.target_modes.k1 = get_or<int>(tm, "k1", 0);
        cfg.target_modes.k2 = get_or<int>(tm, "k2", 1);
    }

    if (j.contains("pulse")) {
        const auto& p = j.at("pulse");
        if (!p.is_object()) throw ConfigError("pulse must be an object");
        cfg.pulse.kind = pulse_kind_from_string(get_or<std::string>(p, "type", "gaussian"));
        cfg.pulse.omega0_hz = get_or<double>(p, "omega0_hz", cfg.pulse.omega0_hz);
        cfg.pulse.z_s = get_or<double>(p, "z_s", cfg.pulse.z_s);
        cfg.pulse.tau_s = get_or<double>(p, "tau_s", cfg.pulse.tau_s);
        cfg.pulse.n_knots = get_or<int>(p, "n_knots", cfg.pulse.n_knots);
    }

    if (j.contains("tol")) {
        const auto& t = j.at("tol");
        if (!t.is_object()) throw ConfigError("tol must be an object");
        cfg.tol.quad_rel = get_or<double>(t, "quad_rel", cfg.tol.quad_rel);
        cfg.tol.root_hz = get_or<double>(t, "root_hz", cfg.tol.root_hz);
    }

    validate(cfg);
    return cfg;
}

void validate(const SystemConfig& cfg) {
    if (cfg.n_ions < 2) throw ConfigError("n_ions must be at least 2");
    if (cfg.n_ions > 64) throw ConfigError("n_ions above 64 is not supported");
    if (cfg.axial_freq_hz.has_value() == cfg.center_spacing_m.has_value())
        throw ConfigError("exactly one of axial_freq_hz or center_spacing_m is required");

    const auto& g = cfg.geometry;
    if (!(g.wavelength > 0.0)) throw ConfigError("wavelength_m must be positive");
    if (!(g.wavevector_factor > 0.0)) throw ConfigError("wavevector_factor must be positive");
    if (!(g.projection_angle >= 0.0 && g.projection_angle <= std::numbers::pi / 2))
        throw ConfigError("projection_angle_rad must lie in [0, pi/2]");

    const auto [i1, i2] = cfg.resolved_pair();
    if (i1 == i2) throw ConfigError("target_pair indices must be distinct");
    if (i1 < 0 || i2 < 0 || i1 >= cfg.n_ions || i2 >= cfg.n_ions)
        throw ConfigError("target_pair index out of range");

    const auto& tm = cfg.target_modes;
    if (tm.direction == Direction::Axial) throw ConfigError("axial modes cannot be gate targets");
    if (tm.k1 < 0 || tm.k2 < 0 || tm.k1 >= cfg.n_ions || tm.k2 >= cfg.n_ions || tm.k1 >= tm.k2)
        throw ConfigError("target_modes requires 0 <= k1 < k2 < n_ions");

    const auto& p = cfg.pulse;
    if (!(p.omega0_hz >= 0.0) || !std::isfinite(p.omega0_hz))
        throw ConfigError("pulse.omega0_hz must be non-negative");
    if (!(p.tau_s > 0.0)) throw ConfigError("pulse.tau_s must be positive");
    if (p.kind != PulseKind::Square && !(p.z_s > 0.0))
        throw ConfigError("pulse.z_s must be positive");
    if (p.kind == PulseKind::SplineGaussian && p.n_knots < 4)
        throw ConfigError("pulse.n_knots must be at least 4");

    if (!(cfg.tol.quad_rel > 0.0) || !(cfg.tol.root_hz > 0.0))
        throw ConfigError("tolerances must be positive");

    const double axial_hz =
        cfg.axial_freq_hz
            ? *cfg.axial_freq_hz
            : angular_to_hz(axial_freq_for_center_spacing(cfg.n_ions, *cfg.center_spacing_m,
                                                          cfg.constants));
    if (!(cfg.radial_a_freq_hz > cfg.radial_b_freq_hz))
        throw ConfigError("radial_a_freq_hz must exceed radial_b_freq_hz");
    if (!(cfg.radial_b_freq_hz > axial_hz)) {
        std::ostringstream msg;
        msg << "linear chain unstable: radial_b_freq_hz (" << cfg.radial_b_freq_hz
            << ") must exceed the axial frequency (" << axial_hz << ")";
        throw ConfigError(msg.str());
    }
}

SystemConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

SystemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json to_json(const SystemConfig& cfg) {
    json j;
    j["n_ions"] = cfg.n_ions;
    if (cfg.axial_freq_hz) j["axial_freq_hz"] = *cfg.axial_freq_hz;
    if (cfg.center_spacing_m) j["center_spacing_m"] = *cfg.center_spacing_m;
    j["radial_a_freq_hz"] = cfg.radial_a_freq_hz;
    j["radial_b_freq_hz"] = cfg.radial_b_freq_hz;
    j["wavelength_m"] = cfg.geometry.wavelength;
    j["wavevector_factor"] = cfg.geometry.wavevector_factor;
    j["projection_angle_rad"] = cfg.geometry.projection_angle;
    if (cfg.target_pair) j["target_pair"] = {cfg.target_pair->first, cfg.target_pair->second};
    j["target_modes"] = {{"direction", to_string(cfg.target_modes.direction)},
                         {"k1", cfg.target_modes.k1},
                         {"k2", cfg.target_modes.k2}};
    j["pulse"] = {{"type", to_string(cfg.pulse.kind)},
                  {"omega0_hz", cfg.pulse.omega0_hz},
                  {"z_s", cfg.pulse.z_s},
                  {"tau_s", cfg.pulse.tau_s},
                  {"n_knots", cfg.pulse.n_knots}};
    j["tol"] = {{"quad_rel", cfg.tol.quad_rel}, {"root_hz", cfg.tol.root_hz}};
    return j;
}

std::string config_hash(const SystemConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace msgate
