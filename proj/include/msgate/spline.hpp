#pragma once

#include <vector>

namespace msgate {

/// Natural cubic spline (zero second derivative at both ends).
class NaturalCubicSpline {
public:
    NaturalCubicSpline() = default;
    /// x strictly ascending, at least 2 points.
    NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t interval(double t) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace msgate
