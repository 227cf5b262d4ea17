#include "msgate/pulse.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "msgate/units.hpp"

namespace msgate {

PulseShape::PulseShape(PulseKind kind, double omega0, double tau, double z, int n_knots)
    : kind_(kind), omega0_(omega0), tau_(tau), z_(z), n_knots_(n_knots) {
    if (!(omega0 >= 0.0)) throw std::invalid_argument("PulseShape: omega0 must be non-negative");
    if (!(tau > 0.0)) throw std::invalid_argument("PulseShape: tau must be positive");
    if (kind != PulseKind::Square && !(z > 0.0))
        throw std::invalid_argument("PulseShape: Gaussian width must be positive");
    if (kind == PulseKind::SplineGaussian) {
        if (n_knots < 4) throw std::invalid_argument("PulseShape: spline needs at least 4 knots");
        std::vector<double> t(n_knots), s(n_knots);
        const double root = std::sqrt(omega0);
        for (int m = 0; m < n_knots; ++m) {
            t[m] = m * tau / (n_knots - 1);
            const double d = t[m] - 0.5 * tau;
            s[m] = root * std::exp(-d * d / (4.0 * z * z));
        }
        spline_ = std::make_shared<const NaturalCubicSpline>(std::move(t), std::move(s));
    }
}

PulseShape PulseShape::square(double omega0, double tau) {
    return PulseShape(PulseKind::Square, omega0, tau, 0.0, 0);
}

PulseShape PulseShape::truncated_gaussian(double omega0, double tau, double z) {
    return PulseShape(PulseKind::TruncGaussian, omega0, tau, z, 0);
}

PulseShape PulseShape::spline_gaussian(double omega0, double tau, double z, int n_knots) {
    return PulseShape(PulseKind::SplineGaussian, omega0, tau, z, n_knots);
}

PulseShape PulseShape::from_spec(const PulseSpec& spec) {
    const double w0 = hz_to_angular(spec.omega0_hz);
    switch (spec.kind) {
        case PulseKind::Square: return square(w0, spec.tau_s);
        case PulseKind::TruncGaussian: return truncated_gaussian(w0, spec.tau_s, spec.z_s);
        case PulseKind::SplineGaussian: return spline_gaussian(w0, spec.tau_s, spec.z_s, spec.n_knots);
    }
    throw std::invalid_argument("PulseShape::from_spec: unknown kind");
}

double PulseShape::amplitude(double t) const {
    if (t < 0.0 || t > tau_) return 0.0;
    switch (kind_) {
        case PulseKind::Square: return omega0_;
        case PulseKind::TruncGaussian: {
            const double d = t - 0.5 * tau_;
            return omega0_ * std::exp(-d * d / (2.0 * z_ * z_));
        }
        case PulseKind::SplineGaussian: {
            const double s = (*spline_)(t);
            return s * s;
        }
    }
    return 0.0;
}

PulseShape PulseShape::with_omega0(double omega0) const {
    return PulseShape(kind_, omega0, tau_, z_, n_knots_);
}

PulseShape PulseShape::with_width(double z) const {
    if (kind_ == PulseKind::Square) return *this;
    return PulseShape(kind_, omega0_, tau_, z, n_knots_);
}

std::vector<double> PulseShape::breakpoints() const {
    if (kind_ == PulseKind::SplineGaussian) return spline_->knots();
    return {0.0, tau_};
}

PulseSpec PulseShape::to_spec() const {
    PulseSpec spec;
    spec.kind = kind_;
    spec.omega0_hz = angular_to_hz(omega0_);
    spec.tau_s = tau_;
    if (kind_ != PulseKind::Square) spec.z_s = z_;
    if (kind_ == PulseKind::SplineGaussian) spec.n_knots = n_knots_;
    return spec;
}

std::string PulseShape::describe() const {
    std::ostringstream out;
    out.precision(12);
    out << to_string(kind_) << " omega0_hz=" << angular_to_hz(omega0_) << " tau_us=" << tau_ * 1e6;
    if (kind_ != PulseKind::Square) out << " z_us=" << z_ * 1e6;
    if (kind_ == PulseKind::SplineGaussian) out << " n_knots=" << n_knots_;
    return out.str();
}

std::string PulseShape::samples_csv(int n_samples) const {
    if (n_samples < 2) throw std::invalid_argument("samples_csv: need at least 2 samples");
    std::ostringstream out;
    out.precision(12);
    out << "t_us,omega_over_2pi_hz\n";
    for (int i = 0; i < n_samples; ++i) {
        const double t = tau_ * i / (n_samples - 1);
        out << t * 1e6 << ',' << angular_to_hz(amplitude(t)) << '\n';
    }
    return out.str();
}

}  // namespace msgate
