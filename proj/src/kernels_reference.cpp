#include <cmath>
#include <cstdlib>

#include "graphnls/kernels.hpp"

namespace graphnls::kernels::reference {

void apply_hamiltonian(const Layout& layout, double alpha, std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t K = layout.cells();
    const double inv_h2 = 1.0 / (layout.h * layout.h);
    const double N = static_cast<double>(layout.n_edges);
    const cplx v = in[0];
    cplx flux{};
    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
        for (std::size_t k = 1; k < K; ++k) {
            out[base + k] = (2.0 * in[base + k] - in[base + k - 1] - in[base + k + 1]) * inv_h2;
        }
        out[base + K] = 0.0;
        flux += v - in[base + 1];
    }
    const cplx hv = 2.0 * inv_h2 / N * flux + 2.0 * alpha / (N * layout.h) * v;
    for (int j = 0; j < layout.n_edges; ++j) {
        out[static_cast<std::size_t>(j) * layout.nodes] = hv;
    }
}

void nonlinear_term(const Layout& layout, double mu, std::span<const cplx> in, std::span<cplx> out) {
    for (std::size_t i = 0; i < layout.size(); ++i) {
        out[i] = std::pow(std::norm(in[i]), mu) * in[i];
    }
}

void nonlinear_phase(const Layout& layout, double mu, double theta, std::span<cplx> data) {
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const double phase = theta * std::pow(std::norm(data[i]), mu);
        data[i] *= cplx(std::cos(phase), std::sin(phase));
    }
}

void edge_power_sums(const Layout& layout, double p, std::span<const cplx> in, std::span<double> out) {
    const std::size_t K = layout.cells();
    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
        double sum = 0.0;
        for (std::size_t k = 0; k <= K; ++k) {
            const double w = (k == 0 || k == K) ? 0.5 : 1.0;
            sum += w * std::pow(std::abs(in[base + k]), p);
        }
        out[static_cast<std::size_t>(j)] = sum * layout.h;
    }
}

void edge_kinetic_sums(const Layout& layout, std::span<const cplx> in, std::span<double> out) {
    const std::size_t K = layout.cells();
    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            sum += std::norm(in[base + k + 1] - in[base + k]);
        }
        out[static_cast<std::size_t>(j)] = sum / layout.h;
    }
}

void solve_shifted(const ShiftedSystem& sys, std::span<const cplx> rhs, std::span<cplx> out) {
    const Layout& layout = sys.layout;
    const std::size_t K = layout.cells();
    const std::size_t n = K - 1;
    const cplx s = -sys.off;
    std::vector<cplx> y(n);
    cplx first_sum{};
    std::vector<std::vector<cplx>> interior(static_cast<std::size_t>(layout.n_edges));

    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx prev = (i == 0) ? cplx{} : y[i - 1];
            y[i] = (rhs[base + 1 + i] - sys.off * prev) * sys.inv_pivot[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            y[i] -= sys.c_prime[i] * y[i + 1];
        }
        first_sum += y[0];
        interior[static_cast<std::size_t>(j)] = y;
    }

    const double N = static_cast<double>(layout.n_edges);
    const cplx v = (rhs[0] + 2.0 * s / N * first_sum) / sys.schur;

    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
        const auto& yj = interior[static_cast<std::size_t>(j)];
        out[base] = v;
        for (std::size_t i = 0; i < n; ++i) {
            out[base + 1 + i] = yj[i] + v * sys.coupling[i];
        }
        out[base + K] = 0.0;
    }
}

BallMax max_ball_mass(const Layout& layout, std::span<const double> node_mass, double radius) {
    const std::size_t K = layout.cells();
    const double q = radius / layout.h;
    BallMax best;
    bool first = true;
    for (int c = 0; c < layout.n_edges; ++c) {
        for (std::size_t kc = (c == 0 ? 0 : 1); kc <= K; ++kc) {
            double total = 0.0;
            for (int j = 0; j < layout.n_edges; ++j) {
                const std::size_t base = static_cast<std::size_t>(j) * layout.nodes;
                for (std::size_t k = 0; k <= K; ++k) {
                    // Graph distance in grid units; the vertex belongs to every edge.
                    const double dist = (j == c || k == 0 || kc == 0)
                                            ? std::abs(static_cast<double>(k) - static_cast<double>(kc))
                                            : static_cast<double>(k + kc);
                    if (inside_ball(dist, q)) {
                        total += node_mass[base + k];
                    }
                }
            }
            if (first || total > best.value) {
                best = BallMax{total, c, kc};
                first = false;
            }
        }
    }
    return best;
}

}  // namespace graphnls::kernels::reference
