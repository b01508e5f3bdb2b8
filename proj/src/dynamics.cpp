#include "graphnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "graphnls/analytic.hpp"
#include "graphnls/error.hpp"
#include "graphnls/functionals.hpp"
#include "graphnls/hamiltonian.hpp"
#include "graphnls/profiles.hpp"

namespace graphnls {

void EvolveConfig::validate() const {
    if (!(dt > 0.0) || !(t_final >= dt) || diagnostics_every < 1) {
        throw Error(ErrorCode::domain, "invalid evolution configuration (need dt > 0, t_final >= dt)");
    }
}

double orbital_distance(const GraphFunction& psi, const GraphFunction& ref) {
    if (!(psi.grid() == ref.grid()) || psi.n_edges() != ref.n_edges()) {
        throw Error(ErrorCode::grid_mismatch, "orbital distance needs both states on the same grid");
    }
    const cplx overlap = h1_inner(ref, psi);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    return h1_norm(psi - phase * ref);
}

namespace {

EvolveDiagnostics record(double t, const GraphFunction& psi, const ProblemParams& params,
                         const GraphFunction* reference) {
    EvolveDiagnostics d;
    d.t = t;
    d.mass = mass(psi);
    d.energy = energy(psi, params.alpha, params.mu);
    d.vertex_abs = std::abs(psi.vertex());
    d.orbdist = reference ? orbital_distance(psi, *reference) : std::numeric_limits<double>::quiet_NaN();
    d.edge_mass = edge_masses(psi);
    return d;
}

}  // namespace

EvolveResult evolve(const GraphFunction& psi0, const ProblemParams& params, const EvolveConfig& config,
                    const GraphFunction* orbit_reference) {
    params.validate();
    config.validate();
    if (psi0.n_edges() != params.n_edges) {
        throw Error(ErrorCode::grid_mismatch, "initial state has the wrong number of edges");
    }
    const Grid& grid = psi0.grid();
    const kernels::Layout layout{psi0.n_edges(), grid.nodes(), grid.spacing()};
    const DiscreteHamiltonian ham(grid, params.n_edges, params.alpha);
    const double half = 0.5 * config.dt;
    const ShiftedSolver implicit = ham.shifted(cplx(0.0, half));

    EvolveResult result{psi0, {}, 0, false, false, {}};
    result.critical = params.mu == 2.0;
    GraphFunction& psi = result.state;
    GraphFunction work(grid, params.n_edges);

    const long long steps = std::max(1LL, std::llround(config.t_final / config.dt));
    const double sup0 = std::max(lp_norm(psi0, std::numeric_limits<double>::infinity()), 1e-300);
    result.diagnostics.push_back(record(0.0, psi, params, orbit_reference));

    for (long long n = 1; n <= steps; ++n) {
        kernels::parallel::nonlinear_phase(layout, params.mu, half, psi.data());
        ham.apply(psi.data(), work.data());
        auto w = work.data();
        const auto p = psi.data();
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = p[i] - cplx(0.0, half) * w[i];
        }
        implicit.solve(work.data(), psi.data());
        kernels::parallel::nonlinear_phase(layout, params.mu, half, psi.data());
        result.steps = static_cast<int>(n);

        if (n % config.diagnostics_every == 0 || n == steps) {
            const double t = static_cast<double>(n) * config.dt;
            result.diagnostics.push_back(record(t, psi, params, orbit_reference));
            const double sup = lp_norm(psi, std::numeric_limits<double>::infinity());
            if (!(sup < config.blowup_factor * sup0)) {
                throw Error(ErrorCode::blowup_suspected, "sup norm grew by more than the blow-up factor", sup);
            }
            double outer = 0.0;
            for (double em : edge_masses_beyond(psi, 0.95 * grid.edge_length())) {
                outer += em;
            }
            if (outer > config.boundary_guard * result.diagnostics.back().mass) {
                result.boundary_abort = true;
                result.warning = "outer 5% of the edges holds more than " + std::to_string(config.boundary_guard) +
                                 " of the mass at t = " + std::to_string(t) + "; truncation no longer negligible";
                break;
            }
        }
    }
    return result;
}

GraphFunction perturbation_direction(const Grid& grid, int n_edges, Perturbation kind, unsigned long long rng_seed) {
    GraphFunction eta(grid, n_edges);
    switch (kind) {
    case Perturbation::edge_bump:
        eta = profiles::edge_bump(grid, n_edges, 1, 4.0, 1.0);
        break;
    case Perturbation::vertex:
        eta = profiles::vertex_gaussian(grid, n_edges, 1.0);
        break;
    case Perturbation::random: {
        std::mt19937_64 rng(rng_seed);
        std::uniform_int_distribution<int> edge(1, n_edges);
        std::uniform_real_distribution<double> centre(0.0, 8.0);
        std::uniform_real_distribution<double> width(0.5, 2.0);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        for (int i = 0; i < 4; ++i) {
            const int e = edge(rng);
            const double c = centre(rng);
            const double w = width(rng);
            const cplx a(amp(rng), amp(rng));
            eta.axpy(a, profiles::edge_bump(grid, n_edges, e, c, w));
        }
        break;
    }
    }
    eta *= 1.0 / h1_norm(eta);
    return eta;
}

StabilityReport stability_experiment(const ProblemParams& params, const Grid& grid, const StabilityConfig& config) {
    params.validate();
    if (!(config.delta >= 0.0)) {
        throw Error(ErrorCode::domain, "perturbation size must be non-negative");
    }
    if (!config.contrast) {
        const double m_star = analytic::critical_mass(params);
        if (!(params.mass < m_star)) {
            throw Error(ErrorCode::inadmissible_mass, "stability experiment needs m < m*", m_star);
        }
    }
    const double omega = analytic::solve_frequency(params, 0);
    const GraphFunction ground = analytic::stationary_state(params, 0, omega, grid);

    GraphFunction psi0 = ground;
    psi0.axpy(config.delta, perturbation_direction(grid, params.n_edges, config.perturbation, config.rng_seed));
    psi0 *= std::sqrt(params.mass / mass(psi0));

    const EvolveConfig ev{config.dt, config.t_final, config.diagnostics_every};
    StabilityReport report{0.0, 0.0, 0.0, 0.0, 0.0, omega, evolve(psi0, params, ev, &ground)};

    const auto& diag = report.run.diagnostics;
    report.initial_distance = diag.front().orbdist;
    double first_sum = 0.0, final_sum = 0.0;
    int first_n = 0, final_n = 0;
    const double t_end = diag.back().t;
    for (const auto& d : diag) {
        report.sup_distance = std::max(report.sup_distance, d.orbdist);
        if (d.t <= 0.25 * t_end) {
            first_sum += d.orbdist;
            ++first_n;
        }
        if (d.t >= 0.75 * t_end) {
            final_sum += d.orbdist;
            ++final_n;
        }
    }
    report.first_quarter_mean = first_n ? first_sum / first_n : 0.0;
    report.final_quarter_mean = final_n ? final_sum / final_n : 0.0;
    report.ratio = config.delta > 0.0 ? report.sup_distance / config.delta : 0.0;
    return report;
}

}  // namespace graphnls
