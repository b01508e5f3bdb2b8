// Wall-clock comparison of the serial reference kernels against the OpenMP
// kernels on one grid. Every pair is also checked for agreement so a fast but
// wrong kernel shows up here.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphnls/kernels.hpp"
#include "json.hpp"

using namespace graphnls::kernels;

namespace {

double seconds_per_call(const std::function<void()>& body, int reps) {
    body();
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
        body();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() / reps;
}

double max_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double g = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        g = std::max(g, std::abs(a[i] - b[i]));
    }
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reference vs parallel kernel timings"};
    int n_edges = 5;
    std::size_t cells = 200000;
    int reps = 20;
    int ball_cells = 2000;
    std::string json_path;
    app.add_option("--n-edges", n_edges, "edges")->check(CLI::Range(2, 64));
    app.add_option("--cells", cells, "cells per edge")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 26));
    app.add_option("--reps", reps, "timed repetitions")->check(CLI::PositiveNumber);
    app.add_option("--ball-cells", ball_cells, "cells per edge for the ball scan")->check(CLI::Range(16, 100000));
    app.add_option("--json", json_path, "also write the table as JSON");
    CLI11_PARSE(app, argc, argv);

    const Layout layout{n_edges, cells + 1, 40.0 / static_cast<double>(cells)};
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss;
    std::vector<cplx> in(layout.size());
    for (auto& v : in) {
        v = {gauss(rng), gauss(rng)};
    }
    for (int j = 0; j < n_edges; ++j) {
        in[static_cast<std::size_t>(j) * layout.nodes] = in[0];
        in[static_cast<std::size_t>(j + 1) * layout.nodes - 1] = 0.0;
    }
    std::vector<cplx> a(layout.size()), b(layout.size());
    std::vector<double> sa(static_cast<std::size_t>(n_edges)), sb(sa.size());
    const auto system = factor_shifted(layout, -1.0, cplx(0.0, 5e-4));

    struct Row {
        std::string name;
        double serial, parallel, gap;
    };
    std::vector<Row> rows;
    auto time_pair = [&](const std::string& name, const std::function<void()>& ref, const std::function<void()>& par,
                         const std::function<double()>& gap) {
        const double ts = seconds_per_call(ref, reps);
        const double tp = seconds_per_call(par, reps);
        rows.push_back({name, ts, tp, gap()});
    };
    auto field_gap = [&] { return max_gap(a, b); };
    auto sum_gap = [&] {
        double g = 0.0;
        for (std::size_t j = 0; j < sa.size(); ++j) {
            g = std::max(g, std::abs(sa[j] - sb[j]) / std::max(1.0, std::abs(sa[j])));
        }
        return g;
    };

    time_pair(
        "apply_hamiltonian", [&] { reference::apply_hamiltonian(layout, -1.0, in, a); },
        [&] { parallel::apply_hamiltonian(layout, -1.0, in, b); }, field_gap);
    time_pair(
        "nonlinear_term", [&] { reference::nonlinear_term(layout, 1.5, in, a); },
        [&] { parallel::nonlinear_term(layout, 1.5, in, b); }, field_gap);
    time_pair(
        "nonlinear_phase",
        [&] {
            a = in;
            reference::nonlinear_phase(layout, 1.0, 1e-3, a);
        },
        [&] {
            b = in;
            parallel::nonlinear_phase(layout, 1.0, 1e-3, b);
        },
        field_gap);
    time_pair(
        "edge_power_sums", [&] { reference::edge_power_sums(layout, 4.0, in, sa); },
        [&] { parallel::edge_power_sums(layout, 4.0, in, sb); }, sum_gap);
    time_pair(
        "edge_kinetic_sums", [&] { reference::edge_kinetic_sums(layout, in, sa); },
        [&] { parallel::edge_kinetic_sums(layout, in, sb); }, sum_gap);
    time_pair(
        "solve_shifted", [&] { reference::solve_shifted(system, in, a); },
        [&] { parallel::solve_shifted(system, in, b); }, field_gap);

    // The direct ball scan is quadratic in the radius, so it runs on a coarser grid.
    const Layout small{n_edges, static_cast<std::size_t>(ball_cells) + 1, 40.0 / ball_cells};
    std::vector<double> node_mass(small.size());
    for (auto& m : node_mass) {
        m = std::abs(gauss(rng));
    }
    BallMax ra, rb;
    time_pair(
        "max_ball_mass", [&] { ra = reference::max_ball_mass(small, node_mass, 5.0 / small.h); },
        [&] { rb = parallel::max_ball_mass(small, node_mass, 5.0 / small.h); },
        [&] { return std::abs(ra.value - rb.value) / ra.value; });

    std::printf("threads %d, N = %d, K = %zu, reps %d\n", omp_get_max_threads(), n_edges, cells, reps);
    std::printf("%-18s %12s %12s %8s %10s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "max gap");
    nlohmann::json table = nlohmann::json::array();
    for (const auto& r : rows) {
        std::printf("%-18s %12.3e %12.3e %8.2f %10.2e\n", r.name.c_str(), r.serial, r.parallel, r.serial / r.parallel,
                    r.gap);
        table.push_back({{"kernel", r.name}, {"serial", r.serial}, {"parallel", r.parallel}, {"gap", r.gap}});
    }
    if (!json_path.empty()) {
        std::FILE* f = std::fopen(json_path.c_str(), "w");
        if (f == nullptr) {
            std::fprintf(stderr, "cannot write %s\n", json_path.c_str());
            return 1;
        }
        const std::string text = nlohmann::json{{"threads", omp_get_max_threads()},
                                                {"n_edges", n_edges},
                                                {"cells", cells},
                                                {"kernels", table}}
                                     .dump(2);
        std::fputs(text.c_str(), f);
        std::fclose(f);
    }
    return 0;
}
