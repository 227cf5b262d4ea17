#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "msgate/config.hpp"
#include "msgate/designer.hpp"

namespace msgate {

/// CSV-ready result table; `meta` lines are written as "# key: value".
struct Table {
    using Cell = std::variant<std::monostate, double, long, std::string>;

    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column_index(const std::string& name) const;
    double number(std::size_t row, const std::string& column) const;
    std::string text(std::size_t row, const std::string& column) const;
};

/// Decimal, 12 significant digits; empty cells for missing values.
void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);

inline constexpr const char* kToolVersion = "msgate 0.1.0";

int default_workers();

/// Run fn(i) for i in [0, n) on `workers` threads. The first exception is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct DetuningSweepOptions {
    double delta0_min_hz = -60e3;
    double delta0_max_hz = 180e3;
    int steps = 601;
    double reference_delta0_hz = -40e3;  // unbalanced Gaussian and square gates
    int workers = default_workers();
};

/// Error budgets versus delta_0 for the balanced Gaussian, the unbalanced Gaussian and
/// the square gate. Columns: pulse, delta0_khz, domega_khz, eps_d, eps_r, eps_s,
/// fidelity, flag.
Table sweep_detuning(const SystemConfig& cfg, const DetuningSweepOptions& opts = {});

struct ContourOptions {
    double z_min_s = 5e-6;
    double z_max_s = 100e-6;
    int z_steps = 100;
    double domega_min_hz = -10e3;
    double domega_max_hz = 10e3;
    int domega_steps = 100;
    int workers = default_workers();
};

/// eps_s over (z, delta_omega); each z is re-balanced and re-calibrated. Columns:
/// z_us, domega_khz, delta0_khz, eps_d, eps_r, eps_s, fidelity, flag.
Table contour(const SystemConfig& cfg, const ContourOptions& opts = {});

struct ChainStudyOptions {
    std::vector<double> center_spacings_m{3.0e-6, 3.5e-6, 4.0e-6, 4.5e-6};
    int n_min = 2;
    int n_max = 33;
    double curve_half_range_hz = 10e3;
    double curve_step_hz = 100.0;
    double sensitivity_half_range_hz = 3e3;
    bool with_sensitivity = true;
    int workers = default_workers();
};

struct ChainStudy {
    /// n_ions, dx0_um, axial_freq_khz, split10_khz, delta0_khz, omega0_khz, theta,
    /// even_flip, eps_s_minus, eps_s_plus, domega_star_khz, eps_s_min, eps_s_max, status.
    Table summary;
    /// n_ions, dx0_um, domega_khz, eps_d, eps_r, eps_s.
    Table curves;
};

/// Per (N, center spacing) designs and error curves. Failures are recorded in the
/// status column and the study continues.
ChainStudy chain_study(const SystemConfig& base, const ChainStudyOptions& opts = {});

struct ParityResult {
    Table scan;  // phi_rad, parity
    ParityScan fit;
    double estimate = 0.0;
    double exact = 0.0;
    double p00 = 0.0;
    double p11 = 0.0;
    double p_odd = 0.0;
};

/// Simulated parity scan of the balanced design at a frequency error delta_omega.
ParityResult parity_experiment(const GateDesign& design, int n_phi, double delta_omega = 0.0);

/// Metadata shared by every table: tool version and config hash.
std::vector<std::pair<std::string, std::string>> base_meta(const SystemConfig& cfg);

}  // namespace msgate
