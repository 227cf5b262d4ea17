#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msgate/config.hpp"
#include "msgate/spline.hpp"

namespace msgate {

/// Carrier Rabi rate envelope Omega(t), zero outside [0, tau].
class PulseShape {
public:
    static PulseShape square(double omega0, double tau);
    static PulseShape truncated_gaussian(double omega0, double tau, double z);
    /// Natural cubic spline through sqrt-Gaussian samples at n_knots equally spaced
    /// times (endpoints included); Omega(t) is the square of the spline.
    static PulseShape spline_gaussian(double omega0, double tau, double z, int n_knots = 13);
    /// Angular units: omega0 = 2 pi spec.omega0_hz.
    static PulseShape from_spec(const PulseSpec& spec);

    double amplitude(double t) const;
    double operator()(double t) const { return amplitude(t); }

    PulseKind kind() const { return kind_; }
    double omega0() const { return omega0_; }
    double tau() const { return tau_; }
    double z() const { return z_; }
    int n_knots() const { return n_knots_; }

    /// Same shape with a different peak Rabi rate.
    PulseShape with_omega0(double omega0) const;
    /// Same shape with a different Gaussian width (square pulses ignore it).
    PulseShape with_width(double z) const;

    /// Times where the envelope is not smooth; quadrature panels align with them.
    std::vector<double> breakpoints() const;

    PulseSpec to_spec() const;
    std::string describe() const;

    /// CSV with columns t_us, omega_over_2pi_hz.
    std::string samples_csv(int n_samples) const;

private:
    PulseShape(PulseKind kind, double omega0, double tau, double z, int n_knots);

    PulseKind kind_;
    double omega0_;
    double tau_;
    double z_;
    int n_knots_;
    std::shared_ptr<const NaturalCubicSpline> spline_;  // immutable, shared between copies
};

}  // namespace msgate
