#pragma once

#include "graphnls/graph_function.hpp"

namespace graphnls {

/// Discrete L^2 mass, trapezoidal rule on every edge.
double mass(const GraphFunction& psi);

/// Discrete Dirichlet form sum_j sum_k |psi_j,k+1 - psi_jk|^2 / h, i.e. ||psi'||^2.
double kinetic_form(const GraphFunction& psi);

/// Trapezoidal sum_j int |psi_j|^p.
double power_integral(const GraphFunction& psi, double p);

/// E = (1/2)||psi'||^2 - ||psi||_{2mu+2}^{2mu+2} / (2mu+2) + (alpha/2)|psi(0)|^2.
/// With alpha = 0 this is the Kirchhoff energy.
double energy(const GraphFunction& psi, double alpha, double mu);

/// Trapezoidal L^p norm for 1 <= p < inf; p = inf gives the largest sample modulus.
/// Throws Error(domain) for p < 1.
double lp_norm(const GraphFunction& psi, double p);

/// Norm over cells k = 1..K (vertex excluded, unit weights): the quantity a
/// rearrangement preserves exactly.
double cell_norm(const GraphFunction& psi, double p);

/// Trapezoidal inner product <a, b> = sum w h conj(a) b.
cplx inner(const GraphFunction& a, const GraphFunction& b);

/// Discrete H^1 inner product: L^2 part plus difference-quotient part.
cplx h1_inner(const GraphFunction& a, const GraphFunction& b);

double l2_norm(const GraphFunction& psi);
double h1_norm(const GraphFunction& psi);
double l2_distance(const GraphFunction& a, const GraphFunction& b);

/// min over theta of ||a - e^{i theta} b||_{L^2}, theta = arg <b, a>.
double phase_aligned_l2_distance(const GraphFunction& a, const GraphFunction& b);

/// Per-edge masses (vertex contributes h/2 |psi(0)|^2 on every edge).
std::vector<double> edge_masses(const GraphFunction& psi);

/// Mass on nodes with x >= x_min, per edge.
std::vector<double> edge_masses_beyond(const GraphFunction& psi, double x_min);

}  // namespace graphnls
