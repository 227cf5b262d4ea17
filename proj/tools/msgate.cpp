#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msgate/config.hpp"
#include "msgate/designer.hpp"
#include "msgate/errors.hpp"
#include "msgate/experiments.hpp"
#include "msgate/oracle.hpp"
#include "msgate/units.hpp"

using namespace msgate;

namespace {

struct Common {
    std::string config;
    std::string out;
    int workers = default_workers();
};

void add_common(CLI::App* cmd, Common& c, bool config_required = true) {
    auto* opt = cmd->add_option("--config", c.config, "JSON system configuration")->check(CLI::ExistingFile);
    if (config_required) opt->required();
    cmd->add_option("--out", c.out, "Output file (default: stdout)");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << text;
}

std::string complex_str(cplx z) {
    std::ostringstream s;
    s.precision(12);
    s << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amplitude-modulated two-qubit gate design for trapped-ion chains"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // design
    Common design_opts;
    std::optional<std::string> pulse_kind;
    std::optional<double> delta0_khz, z_us;
    auto* design = app.add_subcommand("design", "Balanced (or fixed-detuning) gate design as JSON");
    add_common(design, design_opts);
    design->add_option("--pulse", pulse_kind, "Override pulse type")
        ->check(CLI::IsMember({"square", "gaussian", "spline"}));
    design->add_option("--delta0-khz", delta0_khz, "Fixed delta_0 instead of the balance solve");
    design->add_option("--z-us", z_us, "Override the Gaussian width");

    // sweep-detuning
    Common sweep_opts;
    DetuningSweepOptions sweep;
    auto* sw = app.add_subcommand("sweep-detuning", "Error budgets versus delta_0 (CSV)");
    add_common(sw, sweep_opts);
    sw->add_option("--min-hz", sweep.delta0_min_hz, "Lowest delta_0");
    sw->add_option("--max-hz", sweep.delta0_max_hz, "Highest delta_0");
    sw->add_option("--steps", sweep.steps, "Grid points")->check(CLI::PositiveNumber);
    double reference_khz = sweep.reference_delta0_hz / 1e3;
    sw->add_option("--reference-khz", reference_khz, "delta_0 of the unbalanced gates");

    // contour
    Common contour_opts;
    ContourOptions cont;
    double z_min_us = cont.z_min_s * 1e6, z_max_us = cont.z_max_s * 1e6;
    auto* ct = app.add_subcommand("contour", "eps_s over (z, delta_omega) (CSV)");
    add_common(ct, contour_opts);
    ct->add_option("--z-min-us", z_min_us, "Smallest Gaussian width");
    ct->add_option("--z-max-us", z_max_us, "Largest Gaussian width");
    ct->add_option("--z-steps", cont.z_steps, "Widths sampled")->check(CLI::PositiveNumber);
    ct->add_option("--domega-min-hz", cont.domega_min_hz, "Lowest frequency error");
    ct->add_option("--domega-max-hz", cont.domega_max_hz, "Highest frequency error");
    ct->add_option("--domega-steps", cont.domega_steps, "Frequency errors sampled")->check(CLI::PositiveNumber);

    // chain-study
    Common chain_opts;
    ChainStudyOptions chain;
    std::vector<double> spacings_um{3.0, 3.5, 4.0, 4.5};
    std::string curves_out;
    auto* cs = app.add_subcommand("chain-study", "Designs and error curves versus N and ion spacing (CSV)");
    add_common(cs, chain_opts, false);
    cs->add_option("--spacings-um", spacings_um, "Center ion spacings");
    cs->add_option("--n-min", chain.n_min, "Smallest chain");
    cs->add_option("--n-max", chain.n_max, "Largest chain");
    cs->add_option("--curves-out", curves_out, "CSV for eps_d/eps_r curves");
    cs->add_option("--curve-step-hz", chain.curve_step_hz, "Curve grid spacing");
    cs->add_flag("!--no-sensitivity", chain.with_sensitivity, "Skip the eps_s_max search");

    // parity
    Common parity_opts;
    int n_phi = 64;
    double parity_domega_khz = 0.0;
    auto* pr = app.add_subcommand("parity", "Simulated parity scan and fidelity estimate (CSV)");
    add_common(pr, parity_opts);
    pr->add_option("--phases", n_phi, "Analysis phases in [0, pi)")->check(CLI::Range(8, 100000));
    pr->add_option("--domega-khz", parity_domega_khz, "Frequency error");

    // oracle
    Common oracle_opts;
    OracleSpec oracle;
    double oracle_domega_khz = 0.0;
    auto* orc = app.add_subcommand("oracle", "Compare against direct Schroedinger integration (JSON)");
    add_common(orc, oracle_opts);
    orc->add_option("--modes", oracle.modes, "Coupling indices (radial-a first); default: target modes");
    orc->add_option("--n-max", oracle.n_max, "Highest Fock level")->check(CLI::Range(5, 60));
    orc->add_option("--steps", oracle.steps, "RK4 steps")->check(CLI::Range(200000L, 100000000L));
    orc->add_option("--domega-khz", oracle_domega_khz, "Frequency error");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*design) {
            SystemConfig cfg = load_config(design_opts.config);
            if (pulse_kind) cfg.pulse.kind = pulse_kind_from_string(*pulse_kind);
            if (z_us) cfg.pulse.z_s = *z_us * 1e-6;
            validate(cfg);
            const GateDesign d = delta0_khz ? design_at_detuning(cfg, khz(*delta0_khz)) : design_gate(cfg);
            nlohmann::json j = to_json(d);
            const ErrorBreakdown e = evaluate_with_error(d, 0.0);
            j["errors"] = {{"eps_d", e.eps_d}, {"eps_r", e.eps_r}, {"eps_s", e.eps_s}, {"fidelity", e.fidelity}};
            j["config_hash"] = config_hash(cfg);
            emit(design_opts.out, j.dump(2) + "\n");
        } else if (*sw) {
            sweep.workers = sweep_opts.workers;
            sweep.reference_delta0_hz = reference_khz * 1e3;
            emit(sweep_opts.out, to_csv(sweep_detuning(load_config(sweep_opts.config), sweep)));
        } else if (*ct) {
            cont.workers = contour_opts.workers;
            cont.z_min_s = z_min_us * 1e-6;
            cont.z_max_s = z_max_us * 1e-6;
            emit(contour_opts.out, to_csv(contour(load_config(contour_opts.config), cont)));
        } else if (*cs) {
            chain.workers = chain_opts.workers;
            chain.center_spacings_m.clear();
            for (double s : spacings_um) chain.center_spacings_m.push_back(s * 1e-6);
            const SystemConfig base = chain_opts.config.empty() ? SystemConfig{} : load_config(chain_opts.config);
            const ChainStudy study = chain_study(base, chain);
            emit(chain_opts.out, to_csv(study.summary));
            if (!curves_out.empty()) emit(curves_out, to_csv(study.curves));
        } else if (*pr) {
            const GateDesign d = design_gate(load_config(parity_opts.config));
            const ParityResult r = parity_experiment(d, n_phi, khz(parity_domega_khz));
            emit(parity_opts.out, to_csv(r.scan));
            std::fprintf(stderr, "A_pi=%.6f estimate=%.6f exact=%.6f\n", r.fit.amplitude, r.estimate, r.exact);
        } else if (*orc) {
            const GateDesign d = design_gate(load_config(oracle_opts.config));
            oracle.delta_omega = khz(oracle_domega_khz);
            const OracleReport r = run_oracle(d, oracle);
            nlohmann::json j{{"modes", r.modes},
                             {"dimension", r.dimension},
                             {"norm", r.norm},
                             {"leakage", r.leakage},
                             {"overlap", r.overlap},
                             {"overlap_opposite_phase_sign", r.overlap_opposite},
                             {"theta_numeric", r.theta_numeric},
                             {"theta_analytic", r.theta_analytic}};
            for (std::size_t i = 0; i < r.modes.size(); ++i)
                j["alpha"].push_back({{"numeric", complex_str(r.alpha_numeric[i])},
                                      {"analytic", complex_str(r.alpha_analytic[i])},
                                      {"phase_B", r.phase_analytic[i]}});
            emit(oracle_opts.out, j.dump(2) + "\n");
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
