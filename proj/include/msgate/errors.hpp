#pragma once

#include <stdexcept>
#include <string>

namespace msgate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or physically invalid configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An iterative solver (Newton, quadrature refinement, Brent) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A shifted sideband detuning came too close to a motional resonance.
class ResonanceError : public Error {
public:
    using Error::Error;
};

/// The radial trap is too weak for a linear chain (a radial Hessian eigenvalue is not positive).
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, double eigenvalue)
        : Error(what), eigenvalue_(eigenvalue) {}
    double eigenvalue() const { return eigenvalue_; }

private:
    double eigenvalue_;
};

/// The derivative of the entangling phase has no sign change across the search bracket.
class NoBracketError : public Error {
public:
    NoBracketError(const std::string& what, double f_low, double f_high)
        : Error(what), f_low_(f_low), f_high_(f_high) {}
    double f_low() const { return f_low_; }
    double f_high() const { return f_high_; }

private:
    double f_low_;
    double f_high_;
};

}  // namespace msgate
