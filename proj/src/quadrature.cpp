#include "msgate/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msgate {

namespace {

// Legendre P_n and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

GaussLegendre8 build() {
    constexpr int n = GaussLegendre8::kOrder;
    GaussLegendre8 g;
    for (int i = 0; i < n; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [p, dp] = legendre(n, x);
        g.nodes[i] = x;
        g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    // Lagrange basis L_j integrated over [-1, x_i] with the same rule mapped onto
    // that sub-interval (exact: L_j has degree 7).
    auto lagrange = [&](int j, double x) {
        double v = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != j) v *= (x - g.nodes[m]) / (g.nodes[j] - g.nodes[m]);
        return v;
    };
    for (int i = 0; i < n; ++i) {
        const double half = 0.5 * (g.nodes[i] + 1.0);
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int q = 0; q < n; ++q) s += g.weights[q] * lagrange(j, -1.0 + half * (g.nodes[q] + 1.0));
            g.cumulative[i][j] = half * s;
        }
    }
    return g;
}

}  // namespace

const GaussLegendre8& GaussLegendre8::get() {
    static const GaussLegendre8 rule = build();
    return rule;
}

PanelGrid make_panel_grid(double t_end, const std::vector<double>& breakpoints, int panels) {
    if (!(t_end > 0.0)) throw std::invalid_argument("make_panel_grid: empty interval");
    if (panels < 1) throw std::invalid_argument("make_panel_grid: need at least one panel");

    std::vector<double> cuts{0.0};
    for (double b : breakpoints)
        if (b > 0.0 && b < t_end) cuts.push_back(b);
    cuts.push_back(t_end);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const std::size_t segments = cuts.size() - 1;
    const auto& rule = GaussLegendre8::get();
    PanelGrid grid;
    grid.edges.push_back(0.0);
    for (std::size_t s = 0; s < segments; ++s) {
        const double len = cuts[s + 1] - cuts[s];
        const int m = std::max(1, static_cast<int>(std::ceil(panels * len / t_end - 1e-9)));
        for (int p = 1; p <= m; ++p)
            grid.edges.push_back(p == m ? cuts[s + 1] : cuts[s] + len * p / m);
    }
    grid.times.reserve(grid.panels() * GaussLegendre8::kOrder);
    for (std::size_t p = 0; p < grid.panels(); ++p) {
        const double a = grid.edges[p];
        const double h2 = 0.5 * (grid.edges[p + 1] - a);
        for (double x : rule.nodes) grid.times.push_back(a + h2 * (1.0 + x));
    }
    return grid;
}

}  // namespace msgate
