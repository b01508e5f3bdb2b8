#include "graphnls/geometry.hpp"

#include <cmath>

#include "graphnls/error.hpp"
#include "graphnls/kernels.hpp"

namespace graphnls {

double graph_distance(const GraphPoint& a, const GraphPoint& b) {
    if (a.x < 0.0 || b.x < 0.0) {
        throw Error(ErrorCode::domain, "graph coordinates must be non-negative");
    }
    return a.edge == b.edge ? std::abs(a.x - b.x) : a.x + b.x;
}

std::vector<double> node_masses(const GraphFunction& psi) {
    const Grid& g = psi.grid();
    std::vector<double> out(psi.data().size());
    const std::size_t nodes = g.nodes();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = g.weight(i % nodes) * g.spacing() * std::norm(psi.data()[i]);
    }
    return out;
}

double ball_mass(const GraphFunction& psi, const GraphPoint& center, double radius) {
    if (radius < 0.0) {
        throw Error(ErrorCode::domain, "ball radius must be non-negative");
    }
    if (center.edge < 1 || center.edge > psi.n_edges()) {
        throw Error(ErrorCode::domain, "ball centre lies on a non-existent edge");
    }
    const Grid& g = psi.grid();
    const double h = g.spacing();
    const double q = radius / h;
    const double pos = center.x / h;
    double total = 0.0;
    for (int j = 0; j < psi.n_edges(); ++j) {
        const auto e = psi.edge(j);
        const bool own = (j + 1 == center.edge);
        for (std::size_t k = 0; k < e.size(); ++k) {
            const double kk = static_cast<double>(k);
            const double d = (own || k == 0) ? std::abs(kk - pos) : kk + pos;
            if (kernels::inside_ball(d, q)) {
                total += g.weight(k) * h * std::norm(e[k]);
            }
        }
    }
    return total;
}

Concentration concentration(const GraphFunction& psi, double radius) {
    if (radius < 0.0) {
        throw Error(ErrorCode::domain, "concentration radius must be non-negative");
    }
    const auto masses = node_masses(psi);
    const kernels::Layout layout{psi.n_edges(), psi.nodes_per_edge(), psi.grid().spacing()};
    const auto best = kernels::parallel::max_ball_mass(layout, masses, radius);
    return {best.value, GraphPoint{best.edge + 1, psi.grid().x(best.node)}};
}

}  // namespace graphnls
