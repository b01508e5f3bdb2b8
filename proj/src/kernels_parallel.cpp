#include <algorithm>
#include <cmath>
#include <vector>

#include "graphnls/kernels.hpp"

namespace graphnls::kernels::parallel {

namespace {

using index_t = long long;

// Deterministic chunked reduction of f(j, k) over k in [first, last] on every
// edge. Partial sums are combined in chunk order, independent of threads.
template <class F>
void chunked_edge_sums(const Layout& layout, std::size_t first, std::size_t last, std::span<double> out, F f) {
    const std::size_t len = last - first + 1;
    const std::size_t chunks = (len + reduction_chunk - 1) / reduction_chunk;
    const index_t total = static_cast<index_t>(chunks) * layout.n_edges;
    std::vector<double> partial(static_cast<std::size_t>(total), 0.0);

#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < total; ++t) {
        const int j = static_cast<int>(t / static_cast<index_t>(chunks));
        const std::size_t c = static_cast<std::size_t>(t % static_cast<index_t>(chunks));
        const std::size_t lo = first + c * reduction_chunk;
        const std::size_t hi = std::min(last + 1, lo + reduction_chunk);
        double sum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            sum += f(j, k);
        }
        partial[static_cast<std::size_t>(t)] = sum;
    }

    for (int j = 0; j < layout.n_edges; ++j) {
        double sum = 0.0;
        for (std::size_t c = 0; c < chunks; ++c) {
            sum += partial[static_cast<std::size_t>(j) * chunks + c];
        }
        out[static_cast<std::size_t>(j)] = sum;
    }
}

}  // namespace

void apply_hamiltonian(const Layout& layout, double alpha, std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t K = layout.cells();
    const std::size_t nodes = layout.nodes;
    const double inv_h2 = 1.0 / (layout.h * layout.h);
    const index_t total = static_cast<index_t>(layout.size());

#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < total; ++t) {
        const std::size_t i = static_cast<std::size_t>(t);
        const std::size_t k = i % nodes;
        if (k == 0) {
            continue;
        }
        out[i] = (k == K) ? cplx{} : (2.0 * in[i] - in[i - 1] - in[i + 1]) * inv_h2;
    }

    const double N = static_cast<double>(layout.n_edges);
    const cplx v = in[0];
    cplx flux{};
    for (int j = 0; j < layout.n_edges; ++j) {
        flux += v - in[static_cast<std::size_t>(j) * nodes + 1];
    }
    const cplx hv = 2.0 * inv_h2 / N * flux + 2.0 * alpha / (N * layout.h) * v;
    for (int j = 0; j < layout.n_edges; ++j) {
        out[static_cast<std::size_t>(j) * nodes] = hv;
    }
}

void nonlinear_term(const Layout& layout, double mu, std::span<const cplx> in, std::span<cplx> out) {
    const index_t total = static_cast<index_t>(layout.size());
#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < total; ++t) {
        const std::size_t i = static_cast<std::size_t>(t);
        out[i] = std::pow(std::norm(in[i]), mu) * in[i];
    }
}

void nonlinear_phase(const Layout& layout, double mu, double theta, std::span<cplx> data) {
    const index_t total = static_cast<index_t>(layout.size());
#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < total; ++t) {
        const std::size_t i = static_cast<std::size_t>(t);
        const double phase = theta * std::pow(std::norm(data[i]), mu);
        data[i] *= cplx(std::cos(phase), std::sin(phase));
    }
}

void edge_power_sums(const Layout& layout, double p, std::span<const cplx> in, std::span<double> out) {
    const std::size_t K = layout.cells();
    const std::size_t nodes = layout.nodes;
    const bool square = (p == 2.0);
    chunked_edge_sums(layout, 0, K, out, [&](int j, std::size_t k) {
        const cplx z = in[static_cast<std::size_t>(j) * nodes + k];
        const double w = (k == 0 || k == K) ? 0.5 : 1.0;
        return w * (square ? std::norm(z) : std::pow(std::abs(z), p));
    });
    for (auto& v : out) {
        v *= layout.h;
    }
}

void edge_kinetic_sums(const Layout& layout, std::span<const cplx> in, std::span<double> out) {
    const std::size_t nodes = layout.nodes;
    chunked_edge_sums(layout, 0, layout.cells() - 1, out, [&](int j, std::size_t k) {
        const std::size_t i = static_cast<std::size_t>(j) * nodes + k;
        return std::norm(in[i + 1] - in[i]);
    });
    for (auto& v : out) {
        v /= layout.h;
    }
}

void solve_shifted(const ShiftedSystem& sys, std::span<const cplx> rhs, std::span<cplx> out) {
    const Layout& layout = sys.layout;
    const std::size_t K = layout.cells();
    const std::size_t n = K - 1;
    const std::size_t nodes = layout.nodes;
    const cplx s = -sys.off;
    const cplx rhs_vertex = rhs[0];

    // Per-edge elimination of the interior unknowns; out holds y_j.
#pragma omp parallel for schedule(static)
    for (int j = 0; j < layout.n_edges; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * nodes + 1;
        cplx prev{};
        for (std::size_t i = 0; i < n; ++i) {
            prev = (rhs[base + i] - sys.off * prev) * sys.inv_pivot[i];
            out[base + i] = prev;
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            out[base + i] -= sys.c_prime[i] * out[base + i + 1];
        }
    }

    cplx first_sum{};
    for (int j = 0; j < layout.n_edges; ++j) {
        first_sum += out[static_cast<std::size_t>(j) * nodes + 1];
    }
    const double N = static_cast<double>(layout.n_edges);
    const cplx v = (rhs_vertex + 2.0 * s / N * first_sum) / sys.schur;

    const index_t total = static_cast<index_t>(layout.size());
#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < total; ++t) {
        const std::size_t i = static_cast<std::size_t>(t);
        const std::size_t k = i % nodes;
        if (k == 0) {
            out[i] = v;
        } else if (k == K) {
            out[i] = cplx{};
        } else {
            out[i] += v * sys.coupling[k - 1];
        }
    }
}

BallMax max_ball_mass(const Layout& layout, std::span<const double> node_mass, double radius) {
    const std::size_t K = layout.cells();
    const std::size_t nodes = layout.nodes;
    const int N = layout.n_edges;

    std::vector<double> prefix(static_cast<std::size_t>(N) * (nodes + 1), 0.0);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < N; ++j) {
        double* p = prefix.data() + static_cast<std::size_t>(j) * (nodes + 1);
        const double* m = node_mass.data() + static_cast<std::size_t>(j) * nodes;
        for (std::size_t k = 0; k < nodes; ++k) {
            p[k + 1] = p[k] + m[k];
        }
    }
    auto range_sum = [&](int j, std::size_t lo, std::size_t hi) {  // inclusive
        const double* p = prefix.data() + static_cast<std::size_t>(j) * (nodes + 1);
        return p[hi + 1] - p[lo];
    };

    const double q = radius / layout.h;
    const double tol = 1e-9 * std::max(1.0, q);
    const index_t reach = static_cast<index_t>(std::ceil(q - tol)) - 1;  // largest integer offset inside

    // Candidate centres: the vertex once (edge 0, node 0), then nodes 1..K of each edge.
    const index_t candidates = 1 + static_cast<index_t>(N) * static_cast<index_t>(K);
    std::vector<double> values(static_cast<std::size_t>(candidates), 0.0);

#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < candidates; ++t) {
        int c = 0;
        index_t kc = 0;
        if (t > 0) {
            c = static_cast<int>((t - 1) / static_cast<index_t>(K));
            kc = (t - 1) % static_cast<index_t>(K) + 1;
        }
        if (reach < 0) {
            values[static_cast<std::size_t>(t)] = 0.0;
            continue;
        }
        const index_t lo = std::max<index_t>(0, kc - reach);
        const index_t hi = std::min<index_t>(static_cast<index_t>(K), kc + reach);
        double total = range_sum(c, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
        if (reach >= kc) {
            const std::size_t other_hi = static_cast<std::size_t>(std::min<index_t>(static_cast<index_t>(K), reach - kc));
            for (int j = 0; j < N; ++j) {
                if (j != c) {
                    total += range_sum(j, 0, other_hi);
                }
            }
        }
        values[static_cast<std::size_t>(t)] = total;
    }

    BallMax best{values[0], 0, 0};
    for (index_t t = 1; t < candidates; ++t) {
        if (values[static_cast<std::size_t>(t)] > best.value) {
            best.value = values[static_cast<std::size_t>(t)];
            best.edge = static_cast<int>((t - 1) / static_cast<index_t>(K));
            best.node = static_cast<std::size_t>((t - 1) % static_cast<index_t>(K) + 1);
        }
    }
    return best;
}

}  // namespace graphnls::kernels::parallel
