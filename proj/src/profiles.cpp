#include "graphnls/profiles.hpp"

#include <cmath>
#include <numbers>

#include "graphnls/error.hpp"

namespace graphnls::profiles {

GraphFunction vertex_gaussian(const Grid& grid, int n_edges, double width) {
    if (!(width > 0.0)) {
        throw Error(ErrorCode::domain, "gaussian width must be positive");
    }
    return GraphFunction::sample(grid, n_edges, [&](int, double x) {
        return cplx(std::exp(-x * x / (2.0 * width * width)));
    });
}

GraphFunction edge_bump(const Grid& grid, int n_edges, int edge, double center, double width) {
    if (edge < 1 || edge > n_edges) {
        throw Error(ErrorCode::domain, "bump edge must be in 1..N");
    }
    if (!(width > 0.0)) {
        throw Error(ErrorCode::domain, "bump width must be positive");
    }
    return GraphFunction::sample(grid, n_edges, [&](int j, double x) {
        if (j + 1 != edge) {
            return cplx{};
        }
        const double z = (x - center) / width;
        return cplx(std::exp(-0.5 * z * z));
    });
}

GraphFunction flat(const Grid& grid, int n_edges, double extent) {
    if (!(extent > 0.0)) {
        throw Error(ErrorCode::domain, "flat extent must be positive");
    }
    const double taper = 0.5 * extent;
    return GraphFunction::sample(grid, n_edges, [&](int, double x) {
        if (x <= extent) {
            return cplx(1.0);
        }
        if (x >= extent + taper) {
            return cplx{};
        }
        const double c = std::cos(0.5 * std::numbers::pi * (x - extent) / taper);
        return cplx(c * c);
    });
}

}  // namespace graphnls::profiles
