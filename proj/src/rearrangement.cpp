#include "graphnls/rearrangement.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace graphnls {

GraphFunction rearrange(const GraphFunction& psi) {
    const int n = psi.n_edges();
    const std::size_t cells = static_cast<std::size_t>(psi.grid().cells());

    std::vector<double> sorted;
    sorted.reserve(static_cast<std::size_t>(n) * cells);
    for (int j = 0; j < n; ++j) {
        const auto e = psi.edge(j);
        for (std::size_t k = 1; k <= cells; ++k) {
            sorted.push_back(std::abs(e[k]));
        }
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    GraphFunction out(psi.grid(), n);
    for (int j = 0; j < n; ++j) {
        auto e = out.edge(j);
        for (std::size_t k = 1; k <= cells; ++k) {
            const std::size_t rank = static_cast<std::size_t>(n) * (k - 1) + static_cast<std::size_t>(j);
            e[k] = rank < sorted.size() ? sorted[rank] : 0.0;
        }
    }
    out.set_vertex(sorted.empty() ? 0.0 : sorted.front());
    return out;
}

}  // namespace graphnls
