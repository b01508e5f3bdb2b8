#pragma once

// Independent reference computations for the tests. None of these call into
// the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "graphnls/graph_function.hpp"

namespace oracle {

/// Composite Gauss-Legendre (5 points per panel) on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 2000) {
    static const double xs[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                 0.9061798459386640};
    static const double ws[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                 0.2369268850561891};
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        for (int i = 0; i < 5; ++i) {
            sum += ws[i] * f(mid + 0.5 * width * xs[i]);
        }
    }
    return 0.5 * width * sum;
}

/// int_b^1 (1 - t^2)^e dt for e > -1 by tanh-sinh quadrature, which is
/// insensitive to the algebraic endpoint behaviour. The distance to the
/// upper endpoint is formed from the complement 1 - tanh(u) = 2/(e^{2u} + 1)
/// so it never cancels.
inline double tail(double e, double b) {
    const double half = 0.5 * (1.0 - b);
    const double step = 1.0 / 128.0;
    double sum = 0.0;
    for (int i = -6 * 128; i <= 6 * 128; ++i) {
        const double t = i * step;
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        const double w = 0.5 * std::numbers::pi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
        const double right = 2.0 / (std::exp(2.0 * u) + 1.0);   // 1 - x
        const double left = 2.0 / (std::exp(-2.0 * u) + 1.0);   // 1 + x
        const double one_minus_t = half * right;
        const double one_plus_t = 2.0 - half * right;
        if (w == 0.0 || one_minus_t <= 0.0 || left <= 0.0) {
            continue;
        }
        sum += w * std::pow(one_minus_t * one_plus_t, e);
    }
    return half * step * sum;
}

/// Root of a monotone f on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    const bool rising = f(hi) > f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == rising) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Smooth random function: a few Gaussians with complex amplitudes, vertex
/// continuity and the Dirichlet end imposed by sample().
inline graphnls::GraphFunction random_smooth(const graphnls::Grid& grid, int n, std::mt19937_64& rng,
                                             bool complex_values = true) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    struct Bump {
        int edge;
        double c, w;
        graphnls::cplx a;
    };
    std::vector<Bump> bumps;
    const double len = grid.edge_length();
    for (int i = 0; i < 5; ++i) {
        bumps.push_back({static_cast<int>(u(rng) * n) % n, u(rng) * 0.6 * len, 0.05 * len + u(rng) * 0.15 * len,
                         {2.0 * u(rng) - 1.0, complex_values ? 2.0 * u(rng) - 1.0 : 0.0}});
    }
    const double vw = 0.1 * len + u(rng) * 0.1 * len;
    const graphnls::cplx va(u(rng) + 0.5, complex_values ? u(rng) - 0.5 : 0.0);
    return graphnls::GraphFunction::sample(grid, n, [&](int e, double x) {
        graphnls::cplx v = va * std::exp(-x * x / (2.0 * vw * vw));
        for (const auto& b : bumps) {
            if (b.edge == e) {
                v += b.a * std::exp(-(x - b.c) * (x - b.c) / (2.0 * b.w * b.w));
            }
        }
        return v * std::max(0.0, 1.0 - x / len);
    });
}

/// Random (non-smooth) samples with vertex continuity and the Dirichlet end.
inline graphnls::GraphFunction random_rough(const graphnls::Grid& grid, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    graphnls::GraphFunction f(grid, n);
    for (auto& v : f.data()) {
        v = {g(rng), g(rng)};
    }
    f.set_vertex(f.vertex());
    f.clamp_boundary();
    return f;
}

}  // namespace oracle
