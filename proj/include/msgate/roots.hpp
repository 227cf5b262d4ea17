#pragma once

#include <functional>

namespace msgate {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

/// Brent's method on [a, b]; f(a) and f(b) must differ in sign.
/// Stops once the bracket is narrower than x_tol.
RootResult brent_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                      double x_tol, int max_iterations = 200);

struct MinimumResult {
    double x = 0.0;
    double fx = 0.0;
};

/// Golden-section search for a minimum of a unimodal f on [a, b] to x_tol.
MinimumResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                      double x_tol);

}  // namespace msgate
