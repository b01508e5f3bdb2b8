#pragma once

#include <string>
#include <vector>

#include "graphnls/graph_function.hpp"
#include "graphnls/params.hpp"

namespace graphnls {

struct EvolveConfig {
    double dt = 1e-3;
    double t_final = 10.0;
    int diagnostics_every = 100;  // steps
    double boundary_guard = 0.01;  // abort once the outer 5% of the edges holds this mass fraction
    double blowup_factor = 1e6;

    void validate() const;
};

struct EvolveDiagnostics {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double vertex_abs = 0.0;
    double orbdist = 0.0;  // NaN without an orbit reference
    std::vector<double> edge_mass;
};

struct EvolveResult {
    GraphFunction state;
    std::vector<EvolveDiagnostics> diagnostics;
    int steps = 0;
    bool boundary_abort = false;  // run stopped early by the boundary guard
    bool critical = false;        // mu = 2: global existence is not guaranteed
    std::string warning;
};

/// Strang splitting for i psi_t = H psi - |psi|^{2mu} psi: half step of the
/// exact nonlinear phase, Crank-Nicolson step for H_h, half nonlinear step.
/// Both substeps conserve the discrete mass. Throws Error(blowup_suspected)
/// when the sup norm grows by blowup_factor.
EvolveResult evolve(const GraphFunction& psi0, const ProblemParams& params, const EvolveConfig& config,
                    const GraphFunction* orbit_reference = nullptr);

/// min over theta of ||psi - e^{i theta} ref||_{H^1}; theta = arg <ref, psi>_{H^1}.
double orbital_distance(const GraphFunction& psi, const GraphFunction& ref);

enum class Perturbation { edge_bump, vertex, random };

struct StabilityConfig {
    double delta = 0.01;
    double t_final = 50.0;
    double dt = 1e-3;
    int diagnostics_every = 100;
    Perturbation perturbation = Perturbation::edge_bump;
    unsigned long long rng_seed = 0;  // used by Perturbation::random only
    bool contrast = false;            // skip the m < m* requirement (Kirchhoff contrast runs)
};

struct StabilityReport {
    double sup_distance = 0.0;
    double ratio = 0.0;  // sup_distance / delta
    double initial_distance = 0.0;
    double first_quarter_mean = 0.0;
    double final_quarter_mean = 0.0;
    double omega = 0.0;
    EvolveResult run;
};

/// Unit-H^1 perturbation direction of the given family.
GraphFunction perturbation_direction(const Grid& grid, int n_edges, Perturbation kind, unsigned long long rng_seed);

/// Evolves the renormalised Psi_{omega_0,0} + delta * eta and tracks its
/// orbital distance to Psi_{omega_0,0}.
StabilityReport stability_experiment(const ProblemParams& params, const Grid& grid, const StabilityConfig& config);

}  // namespace graphnls
