#pragma once

#include <string>
#include <vector>

#include "graphnls/geometry.hpp"
#include "graphnls/graph_function.hpp"
#include "graphnls/params.hpp"

namespace graphnls {

/// Thresholds of the convergent / runaway / vanishing test. The defaults are
/// finite-box heuristics for an asymptotic statement; all are overridable.
struct ClassifyConfig {
    double probe_radius = 0.0;          // <= 0 selects L / 4
    double convergent_fraction = 0.99;  // rho(psi, R) / m
    double runaway_fraction = 0.9;      // mass fraction beyond L/2 on one edge
    double vanish_factor = 1e-3;        // level = vanish_factor * sqrt(m / L)
    double step_tol = 1e-6;             // successive-snapshot L^2 distance

    double radius_for(const Grid& grid) const { return probe_radius > 0.0 ? probe_radius : 0.25 * grid.edge_length(); }
};

struct FlowConfig {
    double step = 0.5;  // pseudo-time step
    int max_iters = 20000;
    double tol_energy = 1e-10;
    double tol_residual = 1e-8;
    int snapshot_every = 10;
    int max_halvings = 10;
    double runaway_stop = 0.8;  // stop once the dominant edge's mass centre passes this fraction of L
    ClassifyConfig classify;

    void validate() const;
};

struct FlowSnapshot {
    int iter = 0;
    double energy = 0.0;
    double vertex_abs = 0.0;
    double sup_norm = 0.0;
    double rho = 0.0;
    GraphPoint rho_center;
    std::vector<double> edge_fraction;  // per-edge mass / m
    std::vector<double> far_fraction;   // per-edge mass beyond L/2, / m
    double boundary_frac = 0.0;         // mass in the outer 5% of all edges, / m
    double step_distance = 0.0;         // L^2 distance to the previous snapshot
    double residual = 0.0;
    double omega = 0.0;
    double step = 0.0;
};

struct Classification {
    enum class Kind { convergent, vanishing, runaway, undetermined };
    Kind kind = Kind::undetermined;
    int edge = 0;  // runaway edge, 1-based

    std::string to_string() const;
    bool operator==(const Classification&) const = default;
};

enum class FlowStatus { converged, runaway_exit, max_iters };
std::string to_string(FlowStatus status);

struct FlowResult {
    GraphFunction state;
    double energy = 0.0;
    int iterations = 0;
    Classification classification;
    double residual = 0.0;
    double omega = 0.0;  // Lagrange multiplier recovered from the final state
    double step = 0.0;   // pseudo-time step in use at exit
    FlowStatus status = FlowStatus::max_iters;
    std::vector<FlowSnapshot> trail;
};

/// H_h psi - |psi|^{2mu} psi: the gradient of the discrete energy in the
/// trapezoidal inner product.
GraphFunction energy_gradient(const GraphFunction& psi, const ProblemParams& params);

/// Residual of the discrete stationary equation with omega from the
/// Rayleigh-type quotient <grad, psi> / (-M[psi]).
struct StationaryResidual {
    double omega = 0.0;
    double norm = 0.0;
};
StationaryResidual stationary_residual(const GraphFunction& psi, const ProblemParams& params);

/// Normalised gradient flow at fixed mass params.mass.
///
/// Each step solves (I + tau H_h) Phi = Psi + tau (|Psi|^{2mu} Psi - omega_n Psi)
/// with omega_n the current Lagrange multiplier, then rescales Phi to mass m.
/// tau is halved when the energy rises by more than 10 tol_energy (relative);
/// exceeding max_halvings throws Error(non_monotone_energy).
FlowResult minimize(const ProblemParams& params, const Grid& grid, const FlowConfig& config,
                    const GraphFunction& initial);

/// Compactness / runaway / vanishing verdict from the last snapshot of a trail.
Classification classify(const std::vector<FlowSnapshot>& trail, const Grid& grid, const ProblemParams& params,
                        const ClassifyConfig& config = {});

struct NtailComparison {
    double l2_gap = 0.0;      // phase-aligned L^2 distance to Psi_{omega_0, 0}
    double energy_gap = 0.0;  // E[state] - E_0 (closed form)
};

/// Throws Error(not_comparable) unless the result classified convergent.
NtailComparison compare_to_ntail(const FlowResult& result, const ProblemParams& params, const Grid& grid);

}  // namespace graphnls
