#pragma once

#include <array>
#include <complex>
#include <vector>

#include "msgate/modes.hpp"
#include "msgate/trajectory.hpp"

namespace msgate {

using Mat4 = std::array<std::array<cplx, 4>, 4>;

/// Joint eigenbasis of sigma_y (x) sigma_y. State s = (s1, s2) in the order
/// (++, +-, -+, --), where |y+> = (|0> + i|1>)/sqrt2 and |y-> = (|0> - i|1>)/sqrt2.
struct SpinEigensystem {
    /// lambda[k][s] = (eta1 s1 + eta2 s2) / 2 for mode k.
    std::vector<std::array<double, 4>> lambda;
    /// basis[q][s] = <q|s> with q = 2 q1 + q2 in the computational basis.
    Mat4 basis{};
    /// c[s] = <s|00>.
    std::array<cplx, 4> c{};
    /// d[s] = <Phi|s> for Phi = (|00> + i|11>)/sqrt2.
    std::array<cplx, 4> d{};

    static constexpr std::array<int, 4> kS1{+1, +1, -1, -1};
    static constexpr std::array<int, 4> kS2{+1, -1, +1, -1};
};

SpinEigensystem spin_eigensystem(const GateCoupling& coupling);

struct DisplacementError {
    std::vector<double> per_mode;
    double total = 0.0;
};

/// eps_{d,k} = 1 - |(1/4) sum_lambda exp(-|lambda alpha_k|^2 / 2)|^2.
DisplacementError displacement_error(const SpinEigensystem& eig, const Trajectory& traj);

/// |theta - pi/2|^2 / 4.
double rotation_error(double theta);

/// |<Phi, 0| Psi(tau)>|^2 for the analytic propagator acting on |00>|0>.
double exact_fidelity(const SpinEigensystem& eig, const Trajectory& traj);

/// Two-qubit state after tracing out the motion, in the computational basis.
/// Throws Error if it has an eigenvalue below -1e-8.
Mat4 reduced_density_matrix(const SpinEigensystem& eig, const Trajectory& traj);

/// Eigenvalues of a Hermitian 4x4 matrix, ascending.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);

struct ErrorBreakdown {
    std::vector<double> eps_d_per_mode;
    double eps_d = 0.0;
    double eps_r = 0.0;
    double eps_s = 0.0;
    double fidelity = 0.0;
    double theta = 0.0;
    Mat4 rho{};
};

ErrorBreakdown error_breakdown(const GateCoupling& coupling, const Trajectory& traj);

struct ParityScan {
    std::vector<double> phi;
    std::vector<double> parity;
    double amplitude = 0.0;  // A_pi
    double phase = 0.0;      // phi0 in A sin(2 phi + phi0) + C
    double offset = 0.0;     // C
    bool degenerate = false;
};

/// Parity <Z Z> after a global analysis pulse exp(-i pi/4 (cos phi X + sin phi Y))
/// on each qubit.
double parity_after_analysis(const Mat4& rho, double phi);

/// Least-squares fit of A sin(2 phi + phi0) + C. Needs at least 8 phases.
ParityScan parity_scan(const Mat4& rho, const std::vector<double>& phi_grid);

/// Uniform grid of n phases in [0, 2 pi).
std::vector<double> uniform_phases(int n);

/// (rho_00 + rho_11)/2 + A_pi/2.
double parity_fidelity_estimate(const Mat4& rho, double amplitude);

}  // namespace msgate
