#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msgate/designer.hpp"
#include "msgate/errors.hpp"
#include "msgate/experiments.hpp"
#include "msgate/oracle.hpp"
#include "msgate/units.hpp"

namespace py = pybind11;
using namespace msgate;

namespace {

SystemConfig cfg_from(const std::string& text) { return parse_config(text); }

py::dict breakdown_dict(const ErrorBreakdown& e) {
    py::dict d;
    d["eps_d"] = e.eps_d;
    d["eps_d_per_mode"] = e.eps_d_per_mode;
    d["eps_r"] = e.eps_r;
    d["eps_s"] = e.eps_s;
    d["fidelity"] = e.fidelity;
    d["theta"] = e.theta;
    std::vector<std::vector<cplx>> rho(4, std::vector<cplx>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho[i][j] = e.rho[i][j];
    d["rho"] = rho;
    return d;
}

GateDesign make_design(const std::string& config, std::optional<std::string> pulse, std::optional<double> delta0_hz) {
    SystemConfig cfg = cfg_from(config);
    if (pulse) cfg.pulse.kind = pulse_kind_from_string(*pulse);
    validate(cfg);
    return delta0_hz ? design_at_detuning(cfg, hz_to_angular(*delta0_hz)) : design_gate(cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Amplitude-modulated two-qubit gate design for trapped-ion chains";

    auto base = py::register_exception<Error>(m, "MsgateError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
    py::register_exception<ResonanceError>(m, "ResonanceError", base);
    py::register_exception<InstabilityError>(m, "InstabilityError", base);
    py::register_exception<NoBracketError>(m, "NoBracketError", base);

    m.attr("__version__") = kToolVersion;

    m.def("normalize_config", [](const std::string& config) { return to_json(cfg_from(config)).dump(); },
          py::arg("config"), "Validate a JSON config and return it with defaults filled in.");
    m.def("config_hash", [](const std::string& config) { return config_hash(cfg_from(config)); }, py::arg("config"));

    m.def("equilibrium_positions", &equilibrium_positions, py::arg("n"), py::arg("max_iterations") = 200,
          "Dimensionless equilibrium positions of n ions in a harmonic well.");

    m.def(
        "modes",
        [](const std::string& config) {
            const SystemConfig cfg = cfg_from(config);
            const IonChain chain = build_chain(cfg);
            const auto [ra, rb] = radial_mode_pair(cfg, chain);
            py::dict out;
            out["axial_freq_hz"] = angular_to_hz(chain.axial_angular_freq);
            out["positions_m"] = chain.x;
            for (const ModeStructure* ms : {&ra, &rb}) {
                std::vector<double> f;
                for (double v : ms->freqs) f.push_back(angular_to_hz(v));
                std::vector<std::vector<double>> b(ms->size(), std::vector<double>(ms->size()));
                for (std::size_t k = 0; k < ms->size(); ++k)
                    for (std::size_t i = 0; i < ms->size(); ++i) b[k][i] = ms->participation(i, k);
                py::dict d;
                d["freqs_hz"] = f;
                d["participation"] = b;
                d["labels"] = ms->labels;
                out[py::str(to_string(ms->direction))] = d;
            }
            return out;
        },
        py::arg("config"), "Chain and radial normal modes for a config.");

    m.def(
        "evolve",
        [](const std::string& kind, double omega0_hz, double tau_s, double z_s, double delta_hz, int n_knots) {
            PulseSpec spec{pulse_kind_from_string(kind), omega0_hz, z_s, tau_s, n_knots};
            const ModeEvolution ev = evolve(PulseShape::from_spec(spec), hz_to_angular(delta_hz));
            return std::pair<cplx, double>{ev.alpha, ev.phase};
        },
        py::arg("kind"), py::arg("omega0_hz"), py::arg("tau_s"), py::arg("z_s"), py::arg("delta_hz"),
        py::arg("n_knots") = 13, "End-of-pulse displacement alpha and phase B for one detuning.");

    m.def(
        "design",
        [](const std::string& config, std::optional<std::string> pulse, std::optional<double> delta0_hz) {
            return to_json(make_design(config, pulse, delta0_hz)).dump();
        },
        py::arg("config"), py::arg("pulse") = py::none(), py::arg("delta0_hz") = py::none(),
        "Balanced design (or fixed delta_0) as a JSON string.");

    m.def(
        "error_budget",
        [](const std::string& config, double domega_hz, std::optional<std::string> pulse,
           std::optional<double> delta0_hz) {
            return breakdown_dict(evaluate_with_error(make_design(config, pulse, delta0_hz), hz_to_angular(domega_hz)));
        },
        py::arg("config"), py::arg("domega_hz") = 0.0, py::arg("pulse") = py::none(),
        py::arg("delta0_hz") = py::none(), "Error budget of the design at a frequency error.");

    m.def(
        "sweep_detuning",
        [](const std::string& config, double min_hz, double max_hz, int steps, int workers) {
            DetuningSweepOptions o;
            o.delta0_min_hz = min_hz;
            o.delta0_max_hz = max_hz;
            o.steps = steps;
            o.workers = workers;
            py::gil_scoped_release release;
            return to_csv(sweep_detuning(cfg_from(config), o));
        },
        py::arg("config"), py::arg("min_hz") = -60e3, py::arg("max_hz") = 180e3, py::arg("steps") = 601,
        py::arg("workers") = default_workers(), "Detuning sweep as CSV text.");

    m.def(
        "contour",
        [](const std::string& config, double z_min_s, double z_max_s, int z_steps, double dw_min_hz, double dw_max_hz,
           int dw_steps, int workers) {
            ContourOptions o{z_min_s, z_max_s, z_steps, dw_min_hz, dw_max_hz, dw_steps, workers};
            py::gil_scoped_release release;
            return to_csv(contour(cfg_from(config), o));
        },
        py::arg("config"), py::arg("z_min_s") = 5e-6, py::arg("z_max_s") = 100e-6, py::arg("z_steps") = 100,
        py::arg("domega_min_hz") = -10e3, py::arg("domega_max_hz") = 10e3, py::arg("domega_steps") = 100,
        py::arg("workers") = default_workers(), "eps_s contour over (z, delta_omega) as CSV text.");

    m.def(
        "parity",
        [](const std::string& config, int n_phi, double domega_hz) {
            const ParityResult r = parity_experiment(design_gate(cfg_from(config)), n_phi, hz_to_angular(domega_hz));
            py::dict d;
            d["phi"] = r.fit.phi;
            d["parity"] = r.fit.parity;
            d["amplitude"] = r.fit.amplitude;
            d["estimate"] = r.estimate;
            d["exact"] = r.exact;
            return d;
        },
        py::arg("config"), py::arg("n_phi") = 64, py::arg("domega_hz") = 0.0, "Simulated parity scan.");

    m.def(
        "oracle",
        [](const std::string& config, int n_max, long steps, double domega_hz) {
            const GateDesign d = design_gate(cfg_from(config));
            OracleSpec spec;
            spec.n_max = n_max;
            spec.steps = steps;
            spec.delta_omega = hz_to_angular(domega_hz);
            OracleReport r;
            {
                py::gil_scoped_release release;
                r = run_oracle(d, spec);
            }
            py::dict out;
            out["overlap"] = r.overlap;
            out["overlap_opposite"] = r.overlap_opposite;
            out["leakage"] = r.leakage;
            out["theta_numeric"] = r.theta_numeric;
            out["theta_analytic"] = r.theta_analytic;
            out["alpha_numeric"] = r.alpha_numeric;
            out["alpha_analytic"] = r.alpha_analytic;
            return out;
        },
        py::arg("config"), py::arg("n_max") = 15, py::arg("steps") = 200000, py::arg("domega_hz") = 0.0,
        "Compare the analytic gate with direct Schroedinger integration.");
}
