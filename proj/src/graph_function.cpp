#include "graphnls/graph_function.hpp"

#include <string>

#include "graphnls/error.hpp"

namespace graphnls {

GraphFunction::GraphFunction(const Grid& grid, int n_edges)
    : grid_(grid), n_edges_(n_edges) {
    if (n_edges < 1) {
        throw Error(ErrorCode::domain, "a graph function needs at least one edge");
    }
    values_.assign(static_cast<std::size_t>(n_edges) * grid.nodes(), cplx{});
}

GraphFunction GraphFunction::sample(const Grid& grid, int n_edges,
                                    const std::function<cplx(int, double)>& f) {
    GraphFunction out(grid, n_edges);
    cplx vertex_sum{};
    for (int j = 0; j < n_edges; ++j) {
        auto e = out.edge(j);
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = f(j, grid.x(k));
        }
        vertex_sum += e[0];
    }
    out.set_vertex(vertex_sum / static_cast<double>(n_edges));
    out.clamp_boundary();
    return out;
}

std::span<const cplx> GraphFunction::edge(int index) const {
    return std::span<const cplx>(values_).subspan(offset(index), grid_.nodes());
}

std::span<cplx> GraphFunction::edge(int index) {
    return std::span<cplx>(values_).subspan(offset(index), grid_.nodes());
}

void GraphFunction::set_vertex(cplx v) {
    for (int j = 0; j < n_edges_; ++j) {
        values_[offset(j)] = v;
    }
}

void GraphFunction::clamp_boundary() {
    const std::size_t last = grid_.nodes() - 1;
    for (int j = 0; j < n_edges_; ++j) {
        values_[offset(j) + last] = cplx{};
    }
}

GraphFunction& GraphFunction::operator*=(cplx c) {
    for (auto& v : values_) {
        v *= c;
    }
    return *this;
}

void GraphFunction::require_same_shape(const GraphFunction& other) const {
    if (!(grid_ == other.grid_) || n_edges_ != other.n_edges_) {
        throw Error(ErrorCode::grid_mismatch, "graph functions live on different grids");
    }
}

GraphFunction& GraphFunction::operator+=(const GraphFunction& other) {
    axpy(1.0, other);
    return *this;
}

GraphFunction& GraphFunction::operator-=(const GraphFunction& other) {
    axpy(-1.0, other);
    return *this;
}

void GraphFunction::axpy(cplx c, const GraphFunction& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += c * other.values_[i];
    }
}

GraphFunction operator*(cplx c, GraphFunction f) {
    f *= c;
    return f;
}

GraphFunction operator+(GraphFunction a, const GraphFunction& b) {
    a += b;
    return a;
}

GraphFunction operator-(GraphFunction a, const GraphFunction& b) {
    a -= b;
    return a;
}

}  // namespace graphnls
