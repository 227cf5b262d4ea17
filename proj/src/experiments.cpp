#include "msgate/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "msgate/errors.hpp"
#include "msgate/units.hpp"

namespace msgate {

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("Table: no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& column) const {
    const Cell& c = rows.at(row).at(column_index(column));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* l = std::get_if<long>(&c)) return static_cast<double>(*l);
    return std::nan("");
}

std::string Table::text(std::size_t row, const std::string& column) const {
    const Cell& c = rows.at(row).at(column_index(column));
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return {};
}

namespace {

std::string format_cell(const Table::Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double d) const {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", d);
            return buf;
        }
        std::string operator()(long l) const { return std::to_string(l); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (const auto& [key, value] : table.meta) out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

int default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    const int count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
    for (int t = 0; t < count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<std::pair<std::string, std::string>> base_meta(const SystemConfig& cfg) {
    return {{"version", kToolVersion}, {"config_hash", config_hash(cfg)}, {"config", to_json(cfg).dump()}};
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double grid_point(double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
}

/// Error budget row cells, or a flag when the point cannot be evaluated.
std::vector<Table::Cell> budget_cells(const GateDesign& design, double delta_omega) {
    try {
        const ErrorBreakdown e = evaluate_with_error(design, delta_omega);
        return {e.eps_d, e.eps_r, e.eps_s, e.fidelity, std::string{}};
    } catch (const ResonanceError&) {
        return {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, std::string("resonance")};
    } catch (const ConvergenceError&) {
        return {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, std::string("no_convergence")};
    }
}

}  // namespace

Table sweep_detuning(const SystemConfig& cfg, const DetuningSweepOptions& opts) {
    if (opts.steps < 1) throw std::invalid_argument("sweep_detuning: steps must be positive");

    PulseSpec gaussian = cfg.pulse;
    gaussian.kind = PulseKind::TruncGaussian;
    PulseSpec square = cfg.pulse;
    square.kind = PulseKind::Square;

    SystemConfig gcfg = cfg;
    gcfg.pulse = gaussian;
    const double ref = hz_to_angular(opts.reference_delta0_hz);
    const std::vector<std::pair<std::string, GateDesign>> designs{
        {"balanced_gaussian", design_gate(gcfg)},
        {"unbalanced_gaussian", design_at_detuning(cfg, ref, gaussian)},
        {"square", design_at_detuning(cfg, ref, square)},
    };

    Table t;
    t.meta = base_meta(cfg);
    t.meta.emplace_back("grid", "delta0_hz=[" + fmt(opts.delta0_min_hz) + "," + fmt(opts.delta0_max_hz) +
                                    "] steps=" + std::to_string(opts.steps));
    for (const auto& [name, d] : designs)
        t.meta.emplace_back(name, to_json(d).dump());
    t.columns = {"pulse", "delta0_khz", "domega_khz", "eps_d", "eps_r", "eps_s", "fidelity", "flag"};

    const std::size_t n = static_cast<std::size_t>(opts.steps);
    t.rows.resize(designs.size() * n);
    parallel_for(t.rows.size(), opts.workers, [&](std::size_t idx) {
        const auto& [name, design] = designs[idx / n];
        const double delta0 = hz_to_angular(grid_point(opts.delta0_min_hz, opts.delta0_max_hz, opts.steps,
                                                       static_cast<int>(idx % n)));
        const double dw = delta0 - design.delta0();
        std::vector<Table::Cell> row{name, angular_to_hz(delta0) / 1e3, angular_to_hz(dw) / 1e3};
        for (auto& c : budget_cells(design, dw)) row.push_back(std::move(c));
        t.rows[idx] = std::move(row);
    });
    return t;
}

Table contour(const SystemConfig& cfg, const ContourOptions& opts) {
    if (opts.z_steps < 1 || opts.domega_steps < 1) throw std::invalid_argument("contour: empty grid");
    if (cfg.pulse.kind == PulseKind::Square) throw ConfigError("contour needs a Gaussian pulse");

    const std::size_t nz = static_cast<std::size_t>(opts.z_steps);
    const std::size_t nw = static_cast<std::size_t>(opts.domega_steps);

    std::vector<std::optional<GateDesign>> designs(nz);
    std::vector<std::string> failures(nz);
    parallel_for(nz, opts.workers, [&](std::size_t i) {
        SystemConfig c = cfg;
        c.pulse.z_s = grid_point(opts.z_min_s, opts.z_max_s, opts.z_steps, static_cast<int>(i));
        try {
            designs[i] = design_gate(c);
        } catch (const NoBracketError&) {
            failures[i] = "no_balance";
        } catch (const Error&) {
            failures[i] = "design_failed";
        }
    });

    Table t;
    t.meta = base_meta(cfg);
    t.meta.emplace_back("grid", "z_s=[" + fmt(opts.z_min_s) + "," + fmt(opts.z_max_s) + "] steps=" +
                                    std::to_string(opts.z_steps) + " domega_hz=[" + fmt(opts.domega_min_hz) +
                                    "," + fmt(opts.domega_max_hz) + "] steps=" +
                                    std::to_string(opts.domega_steps));
    t.columns = {"z_us", "domega_khz", "delta0_khz", "eps_d", "eps_r", "eps_s", "fidelity", "flag"};
    t.rows.resize(nz * nw);
    parallel_for(t.rows.size(), opts.workers, [&](std::size_t idx) {
        const std::size_t iz = idx / nw;
        const double z = grid_point(opts.z_min_s, opts.z_max_s, opts.z_steps, static_cast<int>(iz));
        const double dw_hz = grid_point(opts.domega_min_hz, opts.domega_max_hz, opts.domega_steps,
                                        static_cast<int>(idx % nw));
        std::vector<Table::Cell> row{z * 1e6, dw_hz / 1e3};
        if (!designs[iz]) {
            row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                                   std::monostate{}, failures[iz]});
        } else {
            row.push_back(angular_to_hz(designs[iz]->delta0()) / 1e3);
            for (auto& c : budget_cells(*designs[iz], hz_to_angular(dw_hz))) row.push_back(std::move(c));
        }
        t.rows[idx] = std::move(row);
    });
    return t;
}

ChainStudy chain_study(const SystemConfig& base, const ChainStudyOptions& opts) {
    if (opts.n_min < 2 || opts.n_max > 64 || opts.n_min > opts.n_max)
        throw std::invalid_argument("chain_study: N range must lie in [2, 64]");

    struct Job {
        int n;
        double spacing;
    };
    std::vector<Job> jobs;
    for (double s : opts.center_spacings_m)
        for (int n = opts.n_min; n <= opts.n_max; ++n) jobs.push_back({n, s});

    const int half = static_cast<int>(std::round(opts.curve_half_range_hz / opts.curve_step_hz));
    const double edge = hz_to_angular(opts.curve_half_range_hz);

    std::vector<std::vector<Table::Cell>> summary(jobs.size());
    std::vector<std::vector<std::vector<Table::Cell>>> curves(jobs.size());

    parallel_for(jobs.size(), opts.workers, [&](std::size_t j) {
        const Job job = jobs[j];
        SystemConfig c = base;
        c.n_ions = job.n;
        c.axial_freq_hz.reset();
        c.center_spacing_m = job.spacing;
        c.target_pair.reset();
        c.target_modes = TargetModes{};
        std::vector<Table::Cell> row{static_cast<long>(job.n), job.spacing * 1e6};
        try {
            const GateDesign d = design_gate(c);
            row.insert(row.end(), {angular_to_hz(d.chain.axial_angular_freq) / 1e3,
                                   angular_to_hz(d.radial_b.lowest_splitting()) / 1e3,
                                   angular_to_hz(d.delta0()) / 1e3, angular_to_hz(d.pulse.omega0()) / 1e3,
                                   d.theta, static_cast<long>(d.coupling.even_flip),
                                   state_error(d, -edge), state_error(d, edge)});
            if (opts.with_sensitivity) {
                const Sensitivity s = sensitivity(d, hz_to_angular(opts.sensitivity_half_range_hz), edge);
                row.insert(row.end(), {angular_to_hz(s.delta_omega_star) / 1e3, s.eps_s_min, s.eps_s_max});
            } else {
                row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
            }
            row.emplace_back(std::string("ok"));

            if (half > 0) {
                const SpinEigensystem eig = spin_eigensystem(d.coupling);
                for (int i = -half; i <= half; ++i) {
                    const double dw = hz_to_angular(i * opts.curve_step_hz);
                    const Trajectory traj = compute_trajectory(d.coupling, d.pulse, {d.delta_c, dw}, d.quad);
                    const double ed = displacement_error(eig, traj).total;
                    const double er = rotation_error(rotation_angle(d.coupling, traj));
                    curves[j].push_back({static_cast<long>(job.n), job.spacing * 1e6,
                                         i * opts.curve_step_hz / 1e3, ed, er, ed + er});
                }
            }
        } catch (const Error& e) {
            row.resize(14);
            row.back() = std::string("failed: ") + e.what();
        }
        summary[j] = std::move(row);
    });

    ChainStudy out;
    out.summary.meta = base_meta(base);
    out.summary.columns = {"n_ions", "dx0_um", "axial_freq_khz", "split10_khz", "delta0_khz",
                           "omega0_khz", "theta", "even_flip", "eps_s_minus", "eps_s_plus",
                           "domega_star_khz", "eps_s_min", "eps_s_max", "status"};
    out.summary.rows = std::move(summary);
    out.curves.meta = out.summary.meta;
    out.curves.meta.emplace_back("grid", "domega_hz=+-" + fmt(opts.curve_half_range_hz) + " step=" +
                                             fmt(opts.curve_step_hz));
    out.curves.columns = {"n_ions", "dx0_um", "domega_khz", "eps_d", "eps_r", "eps_s"};
    for (auto& block : curves)
        for (auto& r : block) out.curves.rows.push_back(std::move(r));
    return out;
}

ParityResult parity_experiment(const GateDesign& design, int n_phi, double delta_omega) {
    const ErrorBreakdown e = evaluate_with_error(design, delta_omega);
    ParityResult r;
    r.fit = parity_scan(e.rho, uniform_phases(n_phi));
    r.estimate = parity_fidelity_estimate(e.rho, r.fit.amplitude);
    r.exact = e.fidelity;
    r.p00 = e.rho[0][0].real();
    r.p11 = e.rho[3][3].real();
    r.p_odd = e.rho[1][1].real() + e.rho[2][2].real();

    r.scan.meta = {{"version", kToolVersion},
                   {"design", to_json(design).dump()},
                   {"domega_hz", fmt(angular_to_hz(delta_omega))},
                   {"amplitude", fmt(r.fit.amplitude)},
                   {"degenerate_fit", r.fit.degenerate ? "true" : "false"},
                   {"p00", fmt(r.p00)},
                   {"p11", fmt(r.p11)},
                   {"p01_plus_p10", fmt(r.p_odd)},
                   {"fidelity_estimate", fmt(r.estimate)},
                   {"fidelity_exact", fmt(r.exact)}};
    r.scan.columns = {"phi_rad", "parity"};
    for (std::size_t i = 0; i < r.fit.phi.size(); ++i) r.scan.rows.push_back({r.fit.phi[i], r.fit.parity[i]});
    return r;
}

}  // namespace msgate
