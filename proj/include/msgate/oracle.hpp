#pragma once

#include <complex>
#include <vector>

#include "msgate/designer.hpp"

namespace msgate {

/// Brute-force propagation of i dpsi/dt = H psi with
/// H = -Omega(t) sum_k S_k (a_k e^{i delta_k t} + a_k^dag e^{-i delta_k t}),
/// S_k = (eta_{1,k} sigma_y^(1) + eta_{2,k} sigma_y^(2)) / 2, in the computational
/// spin basis times a truncated Fock space per mode.
struct OracleSpec {
    /// Indices into GateCoupling::modes; empty selects the two target modes.
    std::vector<std::size_t> modes;
    int n_max = 15;        // highest Fock level kept
    long steps = 200000;   // RK4 steps over [0, tau]
    double delta_omega = 0.0;
    double leakage_limit = 1e-8;
};

struct OracleReport {
    std::vector<std::size_t> modes;
    std::size_t dimension = 0;
    double norm = 0.0;
    double leakage = 0.0;          // population in the two highest Fock levels
    double overlap = 0.0;          // |<analytic|numeric>|^2, propagator exp(-i B S^2) D(S alpha)
    double overlap_opposite = 0.0; // same with exp(+i B S^2)
    std::vector<cplx> alpha_numeric;
    std::vector<cplx> alpha_analytic;
    std::vector<double> phase_analytic;  // B_k
    double theta_numeric = 0.0;
    double theta_analytic = 0.0;   // restricted to the simulated modes
};

/// Throws Error if the truncation leaks more than spec.leakage_limit.
OracleReport run_oracle(const GateCoupling& coupling, const PulseShape& pulse, double delta_c,
                        const OracleSpec& spec = {});

OracleReport run_oracle(const GateDesign& design, const OracleSpec& spec = {});

}  // namespace msgate
