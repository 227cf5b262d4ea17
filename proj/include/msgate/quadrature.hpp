#pragma once

#include <array>
#include <vector>

namespace msgate {

/// 8-point Gauss-Legendre rule on [-1, 1] together with its spectral
/// integration matrix: cumulative[i][j] = integral from -1 to nodes[i] of the
/// j-th Lagrange basis polynomial, so values at the nodes give running integrals
/// at the nodes without extra function evaluations.
struct GaussLegendre8 {
    static constexpr int kOrder = 8;
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
    std::array<std::array<double, kOrder>, kOrder> cumulative{};

    static const GaussLegendre8& get();
};

/// Composite Gauss-Legendre nodes over [0, t_end], with panel edges aligned to the
/// given breakpoints.
struct PanelGrid {
    std::vector<double> edges;   // panel boundaries, size panels + 1
    std::vector<double> times;   // node times, 8 per panel
    std::vector<double> values;  // integrand weight (e.g. Omega) at each node

    std::size_t panels() const { return edges.empty() ? 0 : edges.size() - 1; }
};

/// Distribute about `panels` panels over [0, t_end] so that every breakpoint inside
/// the interval is a panel edge and panel widths within a segment are equal.
PanelGrid make_panel_grid(double t_end, const std::vector<double>& breakpoints, int panels);

}  // namespace msgate
