#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "graphnls/params.hpp"

namespace graphnls {

using cplx = std::complex<double>;

/// A point (x, j) of the star graph. Edges are numbered 1..N; every (0, j)
/// denotes the vertex.
struct GraphPoint {
    int edge = 1;
    double x = 0.0;
};

/// Complex samples of a function on the truncated star graph.
///
/// Storage is edge-major, N blocks of K+1 nodes. Node 0 of every block holds
/// the shared vertex value, node K the Dirichlet zero at x = L. Mutating
/// accessors leave restoring those two invariants to the caller
/// (set_vertex / clamp_boundary); the value-producing helpers keep them.
class GraphFunction {
public:
    GraphFunction(const Grid& grid, int n_edges);

    /// Samples f(edge_index, x) on every node (edge_index is zero-based).
    /// The vertex gets the mean of the per-edge limits at x = 0 and the
    /// outer node is set to zero.
    static GraphFunction sample(const Grid& grid, int n_edges,
                                const std::function<cplx(int, double)>& f);

    const Grid& grid() const { return grid_; }
    int n_edges() const { return n_edges_; }
    std::size_t nodes_per_edge() const { return grid_.nodes(); }

    std::span<const cplx> data() const { return values_; }
    std::span<cplx> data() { return values_; }

    /// Zero-based edge access.
    std::span<const cplx> edge(int index) const;
    std::span<cplx> edge(int index);

    cplx at(int index, std::size_t k) const { return values_[offset(index) + k]; }
    cplx vertex() const { return values_[0]; }

    /// Writes v into node 0 of every edge.
    void set_vertex(cplx v);
    /// Forces node K of every edge to zero.
    void clamp_boundary();

    GraphFunction& operator*=(cplx c);
    GraphFunction& operator+=(const GraphFunction& other);
    GraphFunction& operator-=(const GraphFunction& other);

    /// this += c * other
    void axpy(cplx c, const GraphFunction& other);

private:
    std::size_t offset(int index) const { return static_cast<std::size_t>(index) * grid_.nodes(); }
    void require_same_shape(const GraphFunction& other) const;

    Grid grid_;
    int n_edges_;
    std::vector<cplx> values_;
};

GraphFunction operator*(cplx c, GraphFunction f);
GraphFunction operator+(GraphFunction a, const GraphFunction& b);
GraphFunction operator-(GraphFunction a, const GraphFunction& b);

}  // namespace graphnls
