#include "graphnls/functionals.hpp"

#include <cmath>
#include <numeric>

#include "graphnls/error.hpp"
#include "graphnls/kernels.hpp"

namespace graphnls {

namespace {

kernels::Layout layout_of(const GraphFunction& psi) {
    return {psi.n_edges(), psi.nodes_per_edge(), psi.grid().spacing()};
}

void require_same_grid(const GraphFunction& a, const GraphFunction& b) {
    if (!(a.grid() == b.grid()) || a.n_edges() != b.n_edges()) {
        throw Error(ErrorCode::grid_mismatch, "graph functions live on different grids");
    }
}

}  // namespace

double power_integral(const GraphFunction& psi, double p) {
    std::vector<double> sums(static_cast<std::size_t>(psi.n_edges()));
    kernels::parallel::edge_power_sums(layout_of(psi), p, psi.data(), sums);
    return std::accumulate(sums.begin(), sums.end(), 0.0);
}

double mass(const GraphFunction& psi) { return power_integral(psi, 2.0); }

double kinetic_form(const GraphFunction& psi) {
    std::vector<double> sums(static_cast<std::size_t>(psi.n_edges()));
    kernels::parallel::edge_kinetic_sums(layout_of(psi), psi.data(), sums);
    return std::accumulate(sums.begin(), sums.end(), 0.0);
}

double energy(const GraphFunction& psi, double alpha, double mu) {
    const double p = 2.0 * mu + 2.0;
    return 0.5 * kinetic_form(psi) - power_integral(psi, p) / p + 0.5 * alpha * std::norm(psi.vertex());
}

double lp_norm(const GraphFunction& psi, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::domain, "lp_norm needs p >= 1");
    }
    if (std::isinf(p)) {
        double best = 0.0;
        for (const auto& z : psi.data()) {
            best = std::max(best, std::abs(z));
        }
        return best;
    }
    return std::pow(power_integral(psi, p), 1.0 / p);
}

double cell_norm(const GraphFunction& psi, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::domain, "cell_norm needs p >= 1");
    }
    const bool sup = std::isinf(p);
    double acc = 0.0;
    for (int j = 0; j < psi.n_edges(); ++j) {
        const auto e = psi.edge(j);
        for (std::size_t k = 1; k < e.size(); ++k) {
            const double a = std::abs(e[k]);
            acc = sup ? std::max(acc, a) : acc + std::pow(a, p);
        }
    }
    return sup ? acc : std::pow(acc * psi.grid().spacing(), 1.0 / p);
}

cplx inner(const GraphFunction& a, const GraphFunction& b) {
    require_same_grid(a, b);
    const Grid& g = a.grid();
    cplx sum{};
    for (int j = 0; j < a.n_edges(); ++j) {
        const auto ea = a.edge(j);
        const auto eb = b.edge(j);
        for (std::size_t k = 0; k < ea.size(); ++k) {
            sum += g.weight(k) * std::conj(ea[k]) * eb[k];
        }
    }
    return sum * g.spacing();
}

cplx h1_inner(const GraphFunction& a, const GraphFunction& b) {
    require_same_grid(a, b);
    const double h = a.grid().spacing();
    cplx grad{};
    for (int j = 0; j < a.n_edges(); ++j) {
        const auto ea = a.edge(j);
        const auto eb = b.edge(j);
        for (std::size_t k = 0; k + 1 < ea.size(); ++k) {
            grad += std::conj(ea[k + 1] - ea[k]) * (eb[k + 1] - eb[k]);
        }
    }
    return inner(a, b) + grad / h;
}

double l2_norm(const GraphFunction& psi) { return std::sqrt(mass(psi)); }

double h1_norm(const GraphFunction& psi) { return std::sqrt(mass(psi) + kinetic_form(psi)); }

double l2_distance(const GraphFunction& a, const GraphFunction& b) {
    require_same_grid(a, b);
    return l2_norm(a - b);
}

double phase_aligned_l2_distance(const GraphFunction& a, const GraphFunction& b) {
    const cplx overlap = inner(b, a);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    return l2_norm(a - phase * b);
}

std::vector<double> edge_masses(const GraphFunction& psi) {
    std::vector<double> sums(static_cast<std::size_t>(psi.n_edges()));
    kernels::parallel::edge_power_sums(layout_of(psi), 2.0, psi.data(), sums);
    return sums;
}

std::vector<double> edge_masses_beyond(const GraphFunction& psi, double x_min) {
    const Grid& g = psi.grid();
    std::vector<double> out(static_cast<std::size_t>(psi.n_edges()), 0.0);
    for (int j = 0; j < psi.n_edges(); ++j) {
        const auto e = psi.edge(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (g.x(k) >= x_min) {
                sum += g.weight(k) * std::norm(e[k]);
            }
        }
        out[static_cast<std::size_t>(j)] = sum * g.spacing();
    }
    return out;
}

}  // namespace graphnls
