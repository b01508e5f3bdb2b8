#pragma once

#include "graphnls/graph_function.hpp"

namespace graphnls::profiles {

/// exp(-x^2 / (2 width^2)) on every edge.
GraphFunction vertex_gaussian(const Grid& grid, int n_edges, double width);

/// exp(-(x - center)^2 / (2 width^2)) on one edge (1-based), zero elsewhere.
GraphFunction edge_bump(const Grid& grid, int n_edges, int edge, double center, double width);

/// 1 on [0, extent] on every edge, then a cosine taper to zero over extent / 2.
GraphFunction flat(const Grid& grid, int n_edges, double extent);

}  // namespace graphnls::profiles
