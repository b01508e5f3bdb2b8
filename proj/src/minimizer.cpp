#include "graphnls/minimizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <cmath>
#include <optional>

#include "graphnls/analytic.hpp"
#include "graphnls/error.hpp"
#include "graphnls/functionals.hpp"
#include "graphnls/hamiltonian.hpp"

namespace graphnls {

namespace {

kernels::Layout layout_of(const GraphFunction& psi) {
    return {psi.n_edges(), psi.nodes_per_edge(), psi.grid().spacing()};
}

GraphFunction gradient_with(const DiscreteHamiltonian& ham, const GraphFunction& psi, double mu) {
    GraphFunction out = ham.apply(psi);
    GraphFunction nl(psi.grid(), psi.n_edges());
    kernels::parallel::nonlinear_term(layout_of(psi), mu, psi.data(), nl.data());
    out -= nl;
    return out;
}

FlowSnapshot take_snapshot(int iter, const GraphFunction& psi, const ProblemParams& params, double e,
                           const StationaryResidual& res, double step, double radius,
                           const std::optional<GraphFunction>& previous) {
    const Grid& g = psi.grid();
    const double m = params.mass;
    FlowSnapshot s;
    s.iter = iter;
    s.energy = e;
    s.vertex_abs = std::abs(psi.vertex());
    s.sup_norm = lp_norm(psi, std::numeric_limits<double>::infinity());
    const auto rho = concentration(psi, radius);
    s.rho = rho.value;
    s.rho_center = rho.center;
    for (double em : edge_masses(psi)) {
        s.edge_fraction.push_back(em / m);
    }
    for (double em : edge_masses_beyond(psi, 0.5 * g.edge_length())) {
        s.far_fraction.push_back(em / m);
    }
    double outer = 0.0;
    for (double em : edge_masses_beyond(psi, 0.95 * g.edge_length())) {
        outer += em;
    }
    s.boundary_frac = outer / m;
    s.step_distance = previous ? l2_distance(psi, *previous) : std::numeric_limits<double>::infinity();
    s.residual = res.norm;
    s.omega = res.omega;
    s.step = step;
    return s;
}

// Mass centre of the edge carrying most of the mass, if that edge holds more than half.
std::optional<double> dominant_centre(const GraphFunction& psi) {
    const auto masses = edge_masses(psi);
    const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
    const auto it = std::max_element(masses.begin(), masses.end());
    if (total <= 0.0 || *it <= 0.5 * total) {
        return std::nullopt;
    }
    const int j = static_cast<int>(it - masses.begin());
    const Grid& g = psi.grid();
    const auto e = psi.edge(j);
    double moment = 0.0;
    double weight = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double w = g.weight(k) * std::norm(e[k]);
        moment += w * g.x(k);
        weight += w;
    }
    return moment / weight;
}

}  // namespace

std::string Classification::to_string() const {
    switch (kind) {
    case Kind::convergent: return "convergent";
    case Kind::vanishing: return "vanishing";
    case Kind::runaway: return "runaway(" + std::to_string(edge) + ")";
    case Kind::undetermined: return "undetermined";
    }
    return "undetermined";
}

std::string to_string(FlowStatus status) {
    switch (status) {
    case FlowStatus::converged: return "converged";
    case FlowStatus::runaway_exit: return "runaway-exit";
    case FlowStatus::max_iters: return "max-iters";
    }
    return "max-iters";
}

void FlowConfig::validate() const {
    if (!(step > 0.0) || !(tol_energy > 0.0) || !(tol_residual > 0.0) || max_iters < 1 || snapshot_every < 1 ||
        max_halvings < 0) {
        throw Error(ErrorCode::domain, "invalid flow configuration");
    }
}

GraphFunction energy_gradient(const GraphFunction& psi, const ProblemParams& params) {
    const DiscreteHamiltonian ham(psi.grid(), psi.n_edges(), params.alpha);
    return gradient_with(ham, psi, params.mu);
}

StationaryResidual stationary_residual(const GraphFunction& psi, const ProblemParams& params) {
    GraphFunction g = energy_gradient(psi, params);
    const double omega = -inner(g, psi).real() / mass(psi);
    g.axpy(omega, psi);
    return {omega, l2_norm(g)};
}

FlowResult minimize(const ProblemParams& params, const Grid& grid, const FlowConfig& config,
                    const GraphFunction& initial) {
    params.validate();
    config.validate();
    if (!(initial.grid() == grid) || initial.n_edges() != params.n_edges) {
        throw Error(ErrorCode::grid_mismatch, "initial state does not match the grid / edge count");
    }
    const double m0 = mass(initial);
    if (!(m0 > 0.0)) {
        throw Error(ErrorCode::domain, "initial state has zero mass");
    }

    const double m = params.mass;
    const double radius = config.classify.radius_for(grid);
    const DiscreteHamiltonian ham(grid, params.n_edges, params.alpha);
    double tau = config.step;
    ShiftedSolver solver = ham.shifted(tau);
    int halvings = 0;

    GraphFunction psi = std::sqrt(m / m0) * initial;
    double e = energy(psi, params.alpha, params.mu);

    FlowResult result{psi, e, 0, {}, 0.0, 0.0, 0.0, FlowStatus::max_iters, {}};
    std::optional<GraphFunction> last_snapshot_state;
    double last_snapshot_energy = e;
    StationaryResidual res{};
    int iter = 0;
    bool finished = false;

    for (;; ++iter) {
        GraphFunction g = gradient_with(ham, psi, params.mu);
        res.omega = -inner(g, psi).real() / m;
        g.axpy(res.omega, psi);
        res.norm = l2_norm(g);

        if (iter % config.snapshot_every == 0 || iter == config.max_iters) {
            auto snap = take_snapshot(iter, psi, params, e, res, tau, radius, last_snapshot_state);
            const bool have_previous = last_snapshot_state.has_value();
            result.trail.push_back(std::move(snap));
            if (have_previous) {
                const double change = std::abs(e - last_snapshot_energy) / std::max(std::abs(e), 1e-300);
                if (change < config.tol_energy && res.norm < config.tol_residual) {
                    result.status = FlowStatus::converged;
                    finished = true;
                }
            }
            if (!finished) {
                const auto centre = dominant_centre(psi);
                if (centre && *centre >= config.runaway_stop * grid.edge_length()) {
                    result.status = FlowStatus::runaway_exit;
                    finished = true;
                }
            }
            last_snapshot_state = psi;
            last_snapshot_energy = e;
        }
        if (finished || iter == config.max_iters) {
            break;
        }

        // Phi = Psi - tau (I + tau H)^{-1} r, i.e. (I + tau H) Phi = Psi + tau (|Psi|^{2mu} Psi - omega Psi).
        for (;;) {
            GraphFunction phi = solver.solve(g);
            phi *= -tau;
            phi += psi;
            phi *= std::sqrt(m / mass(phi));
            const double e_new = energy(phi, params.alpha, params.mu);
            if (e_new <= e + 10.0 * config.tol_energy * std::abs(e)) {
                psi = std::move(phi);
                e = e_new;
                break;
            }
            if (++halvings > config.max_halvings) {
                throw Error(ErrorCode::non_monotone_energy,
                            "energy increased after " + std::to_string(config.max_halvings) + " step halvings");
            }
            tau *= 0.5;
            solver = ham.shifted(tau);
        }
    }

    result.state = psi;
    result.energy = e;
    result.iterations = iter;
    result.residual = res.norm;
    result.omega = res.omega;
    result.step = tau;
    result.classification = result.status == FlowStatus::max_iters
                                ? Classification{}
                                : classify(result.trail, grid, params, config.classify);
    return result;
}

Classification classify(const std::vector<FlowSnapshot>& trail, const Grid& grid, const ProblemParams& params,
                        const ClassifyConfig& config) {
    if (trail.size() < 2) {
        return {};
    }
    const FlowSnapshot& last = trail.back();
    const double m = params.mass;
    const double radius = config.radius_for(grid);
    const double level = config.vanish_factor * std::sqrt(m / grid.edge_length());

    const double to_vertex = graph_distance(last.rho_center, GraphPoint{1, 0.0});
    if (last.rho / m >= config.convergent_fraction && to_vertex <= radius && last.step_distance < config.step_tol) {
        return {Classification::Kind::convergent, 0};
    }
    for (std::size_t j = 0; j < last.far_fraction.size(); ++j) {
        if (last.far_fraction[j] > config.runaway_fraction && last.vertex_abs < level) {
            return {Classification::Kind::runaway, static_cast<int>(j) + 1};
        }
    }
    const bool localized = std::any_of(last.far_fraction.begin(), last.far_fraction.end(),
                                       [&](double f) { return f > config.runaway_fraction; });
    if (last.sup_norm < level && !localized) {
        return {Classification::Kind::vanishing, 0};
    }
    return {};
}

NtailComparison compare_to_ntail(const FlowResult& result, const ProblemParams& params, const Grid& grid) {
    if (result.classification.kind != Classification::Kind::convergent) {
        throw Error(ErrorCode::not_comparable, "only convergent flows can be compared with the N-tail state");
    }
    const GraphFunction ntail = analytic::stationary_state(params, 0, grid);
    NtailComparison c;
    c.l2_gap = phase_aligned_l2_distance(result.state, ntail);
    c.energy_gap = energy(result.state, params.alpha, params.mu) - analytic::stationary_energy(params, 0);
    return c;
}

}  // namespace graphnls
