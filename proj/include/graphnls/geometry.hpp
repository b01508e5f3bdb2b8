#pragma once

#include "graphnls/graph_function.hpp"

namespace graphnls {

/// Star-graph metric: |x - y| on the same edge, x + y across edges.
double graph_distance(const GraphPoint& a, const GraphPoint& b);

/// Node-quadrature mass of psi inside the open ball B(center, radius).
double ball_mass(const GraphFunction& psi, const GraphPoint& center, double radius);

struct Concentration {
    double value = 0.0;
    GraphPoint center;
};

/// rho(psi, radius): the largest ball mass over all grid-node centres, with
/// the first maximiser in (edge, coordinate) order.
Concentration concentration(const GraphFunction& psi, double radius);

/// Trapezoidal node masses w_k h |psi_jk|^2 in the GraphFunction layout.
std::vector<double> node_masses(const GraphFunction& psi);

}  // namespace graphnls
